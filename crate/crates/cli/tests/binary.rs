use std::path::Path;
use std::process::{Command, Output};

fn dce(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dce"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const SHORT: &str =
    "[model]\nepsilon = 0.01\nx = 0.0\ng1 = 0.02\n\n[run]\nt_final = 50.0\nn_max = 20\n";

#[test]
fn simulate_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "a.toml", SHORT);
    let csv = dir.path().join("a.csv");
    let out = dce(&["simulate", &cfg, "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert!(header.starts_with(
        "t,eps_t,mean_n,P_e1,P_e2,P_e1e2,P_g1e2,var_Xp,var_Xm,norm_err,parity_leak,trunc_tail"
    ));
    assert!(text.contains("# epsilon = 0.01"));
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "a.toml", SHORT);
    let out = dce(&["simulate", &cfg, "--n-max", "24", "--dt", "0.02"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# n_max = 24"));
    assert!(text.contains("# dt = 0.02"));
}

#[test]
fn usage_and_parse_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&dce(&[])), 1);
    assert_eq!(code(&dce(&["simulate", "/nonexistent/run.toml"])), 1);
    let bad = write(dir.path(), "bad.toml", "[model]\nepsilon = \n");
    let out = dce(&["simulate", &bad]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let extra = write(dir.path(), "extra.toml", &format!("{SHORT}colour = 3\n"));
    assert_eq!(code(&dce(&["simulate", &extra])), 0);
    let out = dce(&["simulate", &extra, "--strict"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}

#[test]
fn validity_warning_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "w.toml",
        "[model]\nepsilon = 0.002\nregime = \"DOUBLE_EXCITATION\"\ng1 = 0.04\ng2 = 0.03\ndelta1 = 0.22\ndelta2 = -0.2\n\n\
         [run]\nt_final = 100.0\nn_max = 8\ncomparison = \"both\"\n",
    );
    assert_eq!(code(&dce(&["compare", &cfg])), 2);
}

#[test]
fn truncation_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "t.toml",
        "[model]\nepsilon = 0.01\nx = 0.0\n\n[run]\neps_t_final = 4.0\nn_max = 6\n",
    );
    let out = dce(&["simulate", &cfg]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("tail"));
}

#[test]
fn resonances_lists_catalogue() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "r.toml",
        "[model]\nepsilon = 0.002\ng1 = 0.04\n",
    );
    let out = dce(&["resonances", &cfg]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = text
        .lines()
        .filter(|l| l.starts_with("TWO_PHOTON_RESONANT"))
        .count();
    assert_eq!(rows, 2, "{text}");
    assert!(text.contains("at most two photons"));

    let out = dce(&["resonances", &cfg, "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains(','));
}

#[test]
fn sweep_subcommand_writes_grid() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.toml",
        &format!("{SHORT}\n[[sweep.axis]]\nparameter = \"g2\"\nvalues = [0.0, 0.01, 0.02]\n"),
    );
    let out = dce(&["sweep", &cfg]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert!(rows[0].starts_with("index,g2,status,"));
    assert_eq!(rows.len(), 4);

    // a sweep file is not a single run
    assert_eq!(code(&dce(&["simulate", &cfg])), 1);
}

#[test]
fn shipped_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let parsed = dce_cli::parse_config(&path, true)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(
            parsed.warnings.is_empty(),
            "{}: {:?}",
            path.display(),
            parsed.warnings
        );
        seen += 1;
    }
    assert!(seen >= 5);
}
