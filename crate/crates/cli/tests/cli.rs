use std::path::PathBuf;
use std::process::Command;

use hol_cli::*;
use hol_core::fixtures::{nilpotent, plane, x};
use hol_core::forms::{Domain, FormMonomial, HomForm};
use hol_core::graded::{Flag, GradedSpace, QMatrix};
use hol_core::locsys::Superconnection;

fn verify() -> Command {
    Command::new(env!("CARGO_BIN_EXE_verify"))
}

fn shipped() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/worked-example.json")
}

fn bare(name: &str, systems: Vec<Superconnection>) -> Scenario {
    Scenario {
        name: name.into(),
        m: 1,
        seed: None,
        systems,
        chains: Vec::new(),
        gauges: Vec::new(),
        homotopies: Vec::new(),
        base_point: None,
    }
}

#[test]
fn mc_on_zero_alpha() {
    let s = Superconnection::trivial(1, Domain::Cylinder, &plane(), None);
    let r = run_suite("mc", &bare("zero", vec![s]), &Options::default()).unwrap();
    assert!(r.passed);
    assert!(!r.checks.is_empty());
    assert!(r.checks.iter().all(|c| c.residual == Some(0.0)));
}

#[test]
fn lemma41_reports_id_plus_xn() {
    let r = run_suite("lemma41", &worked_example(), &Options::default()).unwrap();
    assert!(r.passed, "{}", r.to_text());
    let expected = HomForm::identity(1, Domain::Chart, &plane())
        .add(&HomForm::from_term(1, Domain::Chart, &plane(), &plane(), FormMonomial::ONE, &x(1), &nilpotent()));
    let morph = r.checks.iter().find(|c| c.name == "lemma41/morphism[system 0]").unwrap();
    assert_eq!(morph.value.as_deref(), Some(format!("Φ = {expected:?}").as_str()));
}

#[test]
fn poincare_on_n_dx() {
    let r = run_suite("poincare", &worked_example(), &Options::default()).unwrap();
    assert!(r.passed, "{}", r.to_text());
    let expected = HomForm::identity(1, Domain::Chart, &plane())
        .add(&HomForm::from_term(1, Domain::Chart, &plane(), &plane(), FormMonomial::ONE, &x(1), &nilpotent()));
    let morph = r.checks.iter().find(|c| c.name == "poincare/morphism[system 1]").unwrap();
    assert_eq!(morph.value.as_deref(), Some(format!("Ψ = {expected:?}").as_str()));
}

#[test]
fn worked_example_passes_everything() {
    let opts = Options {
        mode: Mode::Float,
        ..Options::default()
    };
    let r = run_suite("all", &worked_example(), &opts).unwrap();
    assert!(r.passed, "{}", r.to_text());
    let suites: std::collections::BTreeSet<_> = r.checks.iter().map(|c| c.name.split('/').next().unwrap()).collect();
    assert_eq!(suites.len(), SUITES.len() - 1, "{suites:?}");
}

#[test]
fn seeded_appendix_a() {
    let profile: Profile = "m=2,n=2,nu=2,deg=2".parse().unwrap();
    let sc = generate_scenario(7, &profile).unwrap();
    let r = run_suite("appendixA", &sc, &Options::default()).unwrap();
    assert!(r.passed, "{}", r.to_text());
    let c = &r.checks[0];
    assert_eq!(c.kind, CheckKind::Exact);
    assert_eq!(c.residual, Some(0.0));
}

#[test]
fn trivial_profile_is_all_zero() {
    let sc = generate_scenario(0, &"m=1,n=0,nu=1,deg=0".parse().unwrap()).unwrap();
    assert!(sc.systems.iter().all(|s| s.alpha().is_zero()));
    assert!(sc.chains.iter().all(|c| c.chain.n() == 0));
    assert!(sc.gauges.iter().all(|g| g.beta.alpha().is_zero()));
}

#[test]
fn generation_is_deterministic() {
    let p: Profile = "m=2,n=2,nu=3,deg=2".parse().unwrap();
    let a = generate_scenario(5, &p).unwrap().to_json();
    let b = generate_scenario(5, &p).unwrap().to_json();
    assert_eq!(a, b);
    assert_ne!(a, generate_scenario(6, &p).unwrap().to_json());
}

#[test]
fn reports_are_byte_identical() {
    let sc = generate_scenario(2, &"m=1,n=2".parse().unwrap()).unwrap();
    let a = run_suite("all", &sc, &Options::default()).unwrap().to_json();
    let b = run_suite("all", &sc, &Options::default()).unwrap().to_json();
    assert_eq!(a, b);
    let parsed: SuiteReport = serde_json::from_str(&a).unwrap();
    assert!(parsed.passed);
    let names: Vec<_> = parsed.checks.iter().map(|c| c.name.clone()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn scenario_round_trip() {
    for sc in [worked_example(), generate_scenario(9, &"m=2,n=3,nu=2,deg=1".parse().unwrap()).unwrap()] {
        let json = sc.to_json();
        let back = Scenario::from_json(&json).unwrap();
        assert_eq!(back, sc);
        assert_eq!(back.to_json(), json);
    }
}

#[test]
fn shipped_scenario_matches() {
    let path = shipped();
    if std::env::var_os("HOL_BLESS").is_some() {
        std::fs::write(&path, worked_example().to_json() + "\n").unwrap();
    }
    assert_eq!(Scenario::load(&path).unwrap(), worked_example());
}

#[test]
fn mc_passes_on_any_seed() {
    for seed in 0..6 {
        let sc = generate_scenario(seed, &"m=2,n=1,nu=3,deg=2".parse().unwrap()).unwrap();
        assert!(run_suite("mc", &sc, &Options::default()).unwrap().passed);
    }
}

#[test]
fn profile_parsing_and_bounds() {
    let p: Profile = "m=3, n=0, nu=4, deg=3".parse().unwrap();
    assert_eq!(p, Profile { m: 3, n: 0, nu: 4, deg: 3 });
    assert_eq!("".parse::<Profile>().unwrap(), Profile::default());
    for bad in ["m=4", "n=4", "deg=4", "nu=0", "m=0"] {
        let p: Profile = bad.parse().unwrap();
        assert!(matches!(generate_scenario(0, &p), Err(CliError::Profile(_))), "{bad}");
    }
    assert!("q=1".parse::<Profile>().is_err());
    assert!("m=x".parse::<Profile>().is_err());
}

#[test]
fn invalid_scenarios_are_located() {
    let err = Scenario::from_json("{\"name\": \"x\", \"m\": }").unwrap_err();
    assert!(matches!(err, CliError::Schema { line: 1, .. }), "{err}");
    let mut sc = worked_example();
    sc.base_point = Some(Vec::new());
    let err = Scenario::from_json(&sc.to_json()).unwrap_err();
    assert!(matches!(&err, CliError::Invalid { location, .. } if location == "base_point"), "{err}");
    assert!(matches!(run_suite("nope", &worked_example(), &Options::default()), Err(CliError::UnknownSuite(_))));
}

#[test]
fn truncated_series_are_refused() {
    let line = GradedSpace::concentrated(0, 1);
    let dt = HomForm::from_term(1, Domain::Cylinder, &line, &line, FormMonomial::DT, &hol_core::exactnum::MultiPoly::one(), &QMatrix::identity(1));
    let s = Superconnection::new(line, dt, None).unwrap();
    let opts = Options {
        max_order: Some(4),
        ..Options::default()
    };
    let r = run_suite("lemma41", &bare("scalar", vec![s.clone()]), &opts).unwrap();
    assert!(!r.passed);
    assert!(r.checks.iter().all(|c| c.error.is_some()));
    let unflagged = s.with_flag(None).unwrap();
    assert!(!run_suite("lemma41", &bare("scalar", vec![unflagged]), &Options::default()).unwrap().passed);
}

fn curved() -> Scenario {
    let v = plane();
    let alpha = HomForm::from_term(1, Domain::Cylinder, &v, &v, FormMonomial::DT, &x(1), &nilpotent());
    bare("curved", vec![Superconnection::new(v, alpha, Some(Flag::new(2, vec![vec![0], vec![1]]).unwrap())).unwrap()])
}

#[test]
fn exit_codes() {
    let ok = verify().args(["--suite", "mc", "--scenario"]).arg(shipped()).output().unwrap();
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("PASS mc/flat[system 0]"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curved.json");
    std::fs::write(&path, curved().to_json()).unwrap();
    let fail = verify().args(["--suite", "mc", "--scenario"]).arg(&path).output().unwrap();
    assert_eq!(fail.status.code(), Some(1));

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"name\": 3}").unwrap();
    let bad = verify().args(["--suite", "mc", "--scenario"]).arg(&broken).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 1"));

    for args in [
        vec!["--suite", "nope", "--seed", "1"],
        vec!["--suite", "mc"],
        vec!["--suite", "mc", "--seed", "1", "--profile", "m=9"],
        vec!["--suite", "mc", "--seed", "1", "--mode", "fuzzy"],
    ] {
        let out = verify().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn report_files() {
    let dir = tempfile::tempdir().unwrap();
    let explicit = dir.path().join("out/report.json");
    let emitted = dir.path().join("scenario.json");
    let out = verify()
        .args(["--suite", "appendixA", "--seed", "7", "--profile", "m=1,n=2"])
        .arg("--report")
        .arg(&explicit)
        .arg("--emit-scenario")
        .arg(&emitted)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: SuiteReport = serde_json::from_str(&std::fs::read_to_string(&explicit).unwrap()).unwrap();
    assert!(report.passed);
    let sc = Scenario::load(&emitted).unwrap();
    assert_eq!(sc, generate_scenario(7, &"m=1,n=2".parse().unwrap()).unwrap());

    let env_dir = dir.path().join("reports");
    let out = verify()
        .args(["--suite", "mc", "--scenario"])
        .arg(shipped())
        .env("HOL_REPORT_DIR", &env_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let first = std::fs::read(env_dir.join("mc-worked-example.json")).unwrap();
    verify().args(["--suite", "mc", "--scenario"]).arg(shipped()).env("HOL_REPORT_DIR", &env_dir).output().unwrap();
    assert_eq!(first, std::fs::read(env_dir.join("mc-worked-example.json")).unwrap());
}

#[test]
fn float_mode_adds_integrator_checks() {
    let sc = worked_example();
    let exact = run_suite("prop32ode", &sc, &Options::default()).unwrap();
    assert!(exact.checks.iter().all(|c| c.kind == CheckKind::Exact));
    let float = run_suite("prop32ode", &sc, &Options { mode: Mode::Float, ..Options::default() }).unwrap();
    assert!(float.passed);
    let rk4: Vec<_> = float.checks.iter().filter(|c| c.kind == CheckKind::Float).collect();
    assert!(!rk4.is_empty());
    assert!(rk4.iter().all(|c| c.tolerance == Some(1e-6) && c.residual.unwrap() <= 1e-6));
    let strict = run_suite("prop32ode", &sc, &Options { mode: Mode::Float, tolerance: 0.0, step: 0.25, ..Options::default() }).unwrap();
    assert!(strict.checks.iter().filter(|c| c.kind == CheckKind::Exact).all(|c| c.passed));
}
