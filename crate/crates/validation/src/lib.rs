//! Holds the `acceptance` integration test target; there is no library code.
