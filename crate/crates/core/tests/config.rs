use approx::assert_relative_eq;
use brillouin_core::config::load_config;
use brillouin_core::{Config, Error};
use proptest::prelude::*;

#[test]
fn electrostriction_constant_of_silicon() {
    let g = Config::default().material.derived().gamma_el;
    assert_relative_eq!(g, 3.5f64.powi(4) * 0.017, max_relative = 1e-15);
    assert!((g - 2.55).abs() < 0.01, "{g}");
}

#[test]
fn partial_file_keeps_other_defaults() {
    let cfg = Config::from_toml_str("[geometry]\na = 300e-9\n[solver]\ndispersion_points = 50\n").unwrap();
    assert_eq!(cfg.geometry.a, 300e-9);
    assert_eq!(cfg.geometry.length, 0.01);
    assert_eq!(cfg.solver.dispersion_points, 50);
    assert_eq!(cfg.material, Config::default().material);
}

#[test]
fn validation_names_the_field() {
    let err = Config::from_toml_str("[material]\nv_t = 9000.0\n").unwrap_err();
    assert!(matches!(&err, Error::Config(m) if m.contains("v_l")), "{err}");
    let err = Config::from_toml_str("[geometry]\nlength = 1e-6\n").unwrap_err();
    assert!(matches!(&err, Error::Config(m) if m.contains("length")), "{err}");
    assert!(matches!(Config::from_toml_str("[material]\nn = \"x\"\n"), Err(Error::Config(_))));
    assert!(matches!(Config::from_toml_str("[material]\ncolour = 1\n"), Err(Error::Config(_))));
}

#[test]
fn file_loading() {
    let dir = std::env::temp_dir().join(format!("brillouin-config-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("wire.toml");
    std::fs::write(&path, "[material]\nn = 2.0\n").unwrap();
    assert_eq!(load_config(&path).unwrap().material.n, 2.0);
    assert!(matches!(load_config(dir.join("missing.toml")), Err(Error::Io(_))));
    std::fs::remove_dir_all(&dir).unwrap();
}

fn any_config() -> impl Strategy<Value = Config> {
    (1.1f64..4.0, 1000.0f64..6000.0, 1.05f64..2.0, 1000.0f64..9000.0, 0.0f64..0.1, 50e-9f64..2e-6, 200.0f64..1e5, 1e-13f64..1e-6)
        .prop_map(|(n, v_t, ratio, rho, p12, a, radii, tol)| {
            let mut cfg = Config::default();
            cfg.material.n = n;
            cfg.material.v_t = v_t;
            cfg.material.v_l = v_t * ratio;
            cfg.material.rho = rho;
            cfg.material.p12 = p12;
            cfg.geometry.a = a;
            cfg.geometry.length = a * radii;
            cfg.solver.root_tol = tol;
            cfg
        })
}

proptest! {
    #[test]
    fn toml_round_trip(cfg in any_config()) {
        let back = Config::from_toml_str(&cfg.to_toml_string()).unwrap();
        prop_assert_eq!(back, cfg);
    }

    #[test]
    fn derived_constants_follow_the_fields(cfg in any_config()) {
        let m = cfg.material;
        let d = m.derived();
        prop_assert_eq!(d.gamma_el, m.n.powi(4) * m.p12);
        prop_assert_eq!(d.mu, m.rho * m.v_t * m.v_t);
        prop_assert_eq!(d.lambda, m.rho * (m.v_l * m.v_l - 2.0 * m.v_t * m.v_t));
        prop_assert!(d.lambda + 2.0 * d.mu > 0.0);
    }

    #[test]
    fn single_precision_cast(cfg in any_config()) {
        let single = cfg.cast::<f32>();
        prop_assert!(single.validate().is_ok());
        prop_assert!(((single.material.n as f64) / cfg.material.n - 1.0).abs() < 1e-6);
    }
}
