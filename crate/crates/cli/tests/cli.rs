use std::path::PathBuf;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_robin-young");

fn run(args: &[&str], config_env: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("ROBIN_YOUNG_CONFIG");
    if let Some(path) = config_env {
        cmd.env("ROBIN_YOUNG_CONFIG", path);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn dir(name: &str) -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn rho_formats() {
    let csv = run(&["rho", "--rmax", "3", "--format", "csv"], None);
    assert!(csv.status.success());
    assert_eq!(
        stdout(&csv),
        "r,rho,s\n1,1,1\n2,0.5,1.5\n3,0.107489011141371,1.607489011141371\n"
    );
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["rho", "--rmax", "2", "--format", "json"], None))).unwrap();
    assert_eq!(json["rows"][1]["rho"], "0.5");
}

#[test]
fn exit_codes() {
    // the lower family fails for small n
    let o = run(&["sigma-check", "--max", "10", "--family", "lower"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("fail: n=1 family=lower"));
    let o = run(&["sigma-check", "--max", "10", "--family", "upper"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["no-such-command"], None).status.code(), Some(64));
    assert_eq!(run(&["ca", "--count", "0"], None).status.code(), Some(1));
}

#[test]
fn config_from_environment_and_flags() {
    let d = dir("config");
    let conf = d.join("c.conf");
    std::fs::write(&conf, "precision = 20\nseed = 9\n").unwrap();
    let o = run(
        &["sample-cycles", "--n", "50", "--trials", "100"],
        Some(conf.to_str().unwrap()),
    );
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("50,100,9,"));
    // the flag wins over the file
    let o = run(
        &["sample-cycles", "--n", "50", "--trials", "100", "--seed", "3"],
        Some(conf.to_str().unwrap()),
    );
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("50,100,3,"));

    std::fs::write(&conf, "precision = 40\nbogus = 1\n").unwrap();
    let o = run(&["rho"], Some(conf.to_str().unwrap()));
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown key"));
}

#[test]
fn report_exports() {
    let d = dir("exports");
    let csv = d.join("sigma.csv");
    let json = d.join("sigma.json");
    run(
        &[
            "sigma-check",
            "--max",
            "20",
            "--family",
            "canonical",
            "--out",
            csv.to_str().unwrap(),
        ],
        None,
    );
    run(
        &[
            "sigma-check",
            "--max",
            "20",
            "--family",
            "canonical",
            "--out",
            json.to_str().unwrap(),
        ],
        None,
    );
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("item,verdict,margin,"));
    assert_eq!(text.lines().count(), 21);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(v["campaign"], "sigma-vs-a");
    assert_eq!(v["summary"]["pass"], 20);
}

#[test]
fn small_subcommands() {
    let o = stdout(&run(&["atilde", "--n", "4", "--r", "2", "--exact"], None));
    let values: Vec<&str> = o.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(values.len(), 3);
    assert!(values.iter().all(|v| *v == values[0]));
    let o = stdout(&run(&["cycle-stats", "--n", "3", "--exact", "--moments", "2"], None));
    // C_3 takes 1, 2, 3 with probabilities 1/3, 1/2, 1/6: mean 11/6, variance 17/36
    assert_eq!(o, "m,cumulant,central_moment\n1,11/6,0\n2,17/36,17/36\n");
    let o = stdout(&run(
        &["d-table", "--count", "4", "--factors", "1", "--format", "csv"],
        None,
    ));
    assert_eq!(o.lines().next().unwrap(), "n,d1,gamma_log_n");
    let o = run(&["identity-check", "--suite", "symfunc", "--quick"], None);
    assert_eq!(o.status.code(), Some(0));
}
