use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_morita"))
}

fn small_spec() -> &'static str {
    r#"{
        "algebras": [
            {"kind": "rational"},
            {"kind": "product", "factors": [{"kind": "rational"}, {"kind": "rational"}]},
            {"kind": "dual_numbers"}
        ],
        "bimodules": {"count": 4, "max_dim": 4, "seed": 3}
    }"#
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

#[test]
fn gen_corpus_then_verify_round_trip() {
    let dir = std::env::temp_dir().join("morita-cli-roundtrip");
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("spec.json");
    let corpus = dir.join("corpus.json");
    let report = dir.join("report.json");
    write(&spec, small_spec());

    let out = bin().args(["gen-corpus", "--spec"]).arg(&spec).arg("--out").arg(&corpus).output().unwrap();
    assert!(out.status.success(), "gen-corpus failed: {}", String::from_utf8_lossy(&out.stderr));

    let out = bin()
        .args(["verify", "--suite", "dualobjects", "--corpus"])
        .arg(&corpus)
        .args(["--seed", "7", "--max-dim", "4", "--report"])
        .arg(&report)
        .args(["--jobs", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "verify failed: {}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&report).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["failures"], 0);
    assert!(json["digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn verify_is_deterministic_per_seed() {
    let dir = std::env::temp_dir().join("morita-cli-determinism");
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("spec.json");
    let corpus = dir.join("corpus.json");
    write(&spec, small_spec());
    let out = bin().args(["gen-corpus", "--spec"]).arg(&spec).arg("--out").arg(&corpus).output().unwrap();
    assert!(out.status.success());

    let mut digests = Vec::new();
    for i in 0..2 {
        let report = dir.join(format!("report{i}.json"));
        let out = bin()
            .args(["verify", "--suite", "rep", "--corpus"])
            .arg(&corpus)
            .args(["--seed", "11", "--max-dim", "4", "--report"])
            .arg(&report)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let json: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
        digests.push(json["digest"].as_str().unwrap().to_string());
    }
    assert_eq!(digests[0], digests[1]);
}

#[test]
fn mutated_corpus_fails_with_exit_one() {
    let dir = std::env::temp_dir().join("morita-cli-mutation");
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("spec.json");
    let corpus = dir.join("corpus.json");
    let report = dir.join("report.json");
    write(
        &spec,
        r#"{
            "algebras": [{"kind": "rational"}],
            "bimodules": {"count": 0, "max_dim": 2, "seed": 3},
            "mutation": {"suite": "rep", "cell": "theta", "entry": [0, 0]}
        }"#,
    );
    let out = bin().args(["gen-corpus", "--spec"]).arg(&spec).arg("--out").arg(&corpus).output().unwrap();
    assert!(out.status.success());
    let out = bin()
        .args(["verify", "--suite", "rep", "--corpus"])
        .arg(&corpus)
        .args(["--seed", "7", "--max-dim", "4", "--report"])
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "mutated corpus must fail verification");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("FAIL"), "failing check must be identified:\n{stdout}");
}

#[test]
fn usage_and_input_errors_exit_two() {
    // unknown suite
    let dir = std::env::temp_dir().join("morita-cli-usage");
    std::fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("spec.json");
    let corpus = dir.join("corpus.json");
    write(&spec, small_spec());
    bin().args(["gen-corpus", "--spec"]).arg(&spec).arg("--out").arg(&corpus).output().unwrap();
    let out = bin()
        .args(["verify", "--suite", "nonsense", "--corpus"])
        .arg(&corpus)
        .args(["--report"])
        .arg(dir.join("r.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // missing corpus file
    let out = bin()
        .args(["verify", "--suite", "rep", "--corpus"])
        .arg(dir.join("missing.json"))
        .args(["--report"])
        .arg(dir.join("r.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // malformed flags
    let out = bin().args(["verify", "--no-such-flag"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn shipped_default_spec_matches_library_default() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpora/default.json");
    let text = std::fs::read_to_string(path).unwrap();
    let from_file: morita::CorpusSpec = serde_json::from_str(&text).unwrap();
    let from_lib = morita::CorpusSpec::default();
    assert_eq!(
        serde_json::to_string(&from_file).unwrap(),
        serde_json::to_string(&from_lib).unwrap()
    );
}
