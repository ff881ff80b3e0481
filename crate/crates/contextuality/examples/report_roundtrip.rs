//! Drive the command-line front end in-process and verify its report.

use contextuality::cli;

fn main() {
    let dir = std::env::temp_dir().join("ctx-example");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let scenario = dir.join("ks18.json");
    let out = cli::run(["ctx", "catalog", "get", "ks-18", "-o", scenario.to_str().unwrap()]);
    assert_eq!(out.code, cli::EXIT_OK, "{}", out.stderr);

    let decided = cli::run(["ctx", "decide", "allows-classical", scenario.to_str().unwrap()]);
    println!("exit code {}", decided.code);
    let report = dir.join("report.json");
    std::fs::write(&report, &decided.stdout).expect("write report");
    let verified = cli::run(["ctx", "verify", report.to_str().unwrap()]);
    let parsed: serde_json::Value = serde_json::from_str(&verified.stdout).expect("json report");
    println!("verify exit code {}: {}", verified.code, parsed["result"]);
}
