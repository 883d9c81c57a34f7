use std::path::Path;
use std::process::{Command, Output};

use amrkit::corpus::{parse_corpus, write_corpus};
use amrkit::fixtures::{
    CRK_CAS_ALIGNMENT, CRK_CAS_PENMAN, CRK_CAS_SENTENCE, CRK_CAS_TREE, CRK_CAS_WORD_ORDER_TREE,
};
use amrkit::synth::{random_corpus, GraphShape};
use amrkit::{parse_penman, smatch_exact, Document};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amrkit"))
        .args(args)
        .current_dir(dir)
        .env_remove("AMRKIT_CONFIG")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

fn example_dir() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let doc = Document::new(
        "crk",
        CRK_CAS_SENTENCE,
        parse_penman(CRK_CAS_PENMAN).unwrap(),
    );
    write(dir.path(), "g.amr", &write_corpus([&doc], true));
    dir
}

#[test]
fn smatch_on_identical_files() {
    let dir = example_dir();
    let out = stdout(&run(
        dir.path(),
        &[
            "smatch", "--gold", "g.amr", "--test", "g.amr", "--seed", "1",
        ],
    ));
    assert!(out.lines().any(|l| l == "F 1.0000"), "{out}");
    let json = stdout(&run(
        dir.path(),
        &[
            "smatch", "--gold", "g.amr", "--test", "g.amr", "--seed", "1", "--format", "json",
        ],
    ));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["f"], 1.0);
    assert_eq!(v["matched"], 21);
}

#[test]
fn scoring_needs_a_seed() {
    let dir = example_dir();
    let out = run(
        dir.path(),
        &["smatch", "--gold", "g.amr", "--test", "g.amr"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--seed"));
}

#[test]
fn usage_errors_exit_2() {
    let dir = example_dir();
    assert_eq!(
        run(dir.path(), &["smatch", "--gold", "g.amr"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(dir.path(), &["nonsense"]).status.code(), Some(2));
    let out = run(dir.path(), &["anonymize", "g.amr", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(
        dir.path(),
        &[
            "wikify",
            "--corpus",
            "g.amr",
            "--table",
            "t",
            "--threshold",
            "2",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_supplies_the_seed() {
    let dir = example_dir();
    write(dir.path(), "c.toml", "seed = 3\nrestarts = 2\n");
    let out = Command::new(env!("CARGO_BIN_EXE_amrkit"))
        .args(["smatch", "--gold", "g.amr", "--test", "g.amr"])
        .current_dir(dir.path())
        .env("AMRKIT_CONFIG", "c.toml")
        .output()
        .unwrap();
    assert!(stdout(&out).contains("F 1.0000"));
    write(dir.path(), "bad.toml", "threshold = 3\n");
    let out = run(dir.path(), &["--config", "bad.toml", "validate", "g.amr"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn restore_then_validate() {
    let dir = example_dir();
    write(dir.path(), "t.txt", CRK_CAS_TREE);
    let restored = stdout(&run(dir.path(), &["restore", "t.txt", "-o", "r.amr"]));
    assert!(restored.is_empty());
    let out = run(dir.path(), &["validate", "r.amr"]);
    assert_eq!(out.status.code(), Some(0));
    let corpus = parse_corpus(&std::fs::read_to_string(dir.path().join("r.amr")).unwrap());
    let g = &corpus.documents[0].graph;
    assert_eq!(
        smatch_exact(&parse_penman(CRK_CAS_PENMAN).unwrap(), g, 10)
            .unwrap()
            .f,
        1.0
    );
    assert!(g.in_degrees().values().any(|&d| d == 2));
}

#[test]
fn anonymize_restore_round_trip() {
    let dir = example_dir();
    let blocks = stdout(&run(dir.path(), &["anonymize", "g.amr"]));
    write(dir.path(), "t.txt", &blocks);
    let restored = stdout(&run(dir.path(), &["restore", "t.txt"]));
    let doc = &parse_corpus(&restored).documents[0];
    assert_eq!(doc.id, "crk");
    assert_eq!(doc.sentence, CRK_CAS_SENTENCE);

    let lines = stdout(&run(dir.path(), &["anonymize", "g.amr", "--per-line"]));
    assert_eq!(lines.lines().count(), 1);
    write(dir.path(), "l.txt", &lines);
    let restored = stdout(&run(dir.path(), &["restore", "--per-line", "l.txt"]));
    assert_eq!(parse_corpus(&restored).documents[0].id, "#1");
}

#[test]
fn validate_reports_bad_blocks() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "bad.amr",
        "# ::id a\n(a / b\n\n# ::id ok\n(c / cell)\n",
    );
    let out = run(dir.path(), &["validate", "bad.amr"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("bad.amr:2 (a)"), "{text}");
    assert!(text.contains("2 documents, 1 problems"), "{text}");
}

#[test]
fn augment_doubles_ten_docs() {
    let dir = tempfile::tempdir().unwrap();
    let docs = random_corpus(&mut ChaCha8Rng::seed_from_u64(4), 10, GraphShape::small(6));
    write(dir.path(), "c.amr", &write_corpus(&docs, true));
    write(dir.path(), "a.aln", &"\n".repeat(10));
    let out = stdout(&run(
        dir.path(),
        &["augment", "--corpus", "c.amr", "--alignments", "a.aln"],
    ));
    let corpus = parse_corpus(&out);
    assert!(corpus.errors.is_empty());
    assert_eq!(corpus.documents.len(), 20);
    assert_eq!(corpus.documents[10].id, format!("{}.aug", docs[0].id));

    write(dir.path(), "short.aln", "\n");
    let out = run(
        dir.path(),
        &["augment", "--corpus", "c.amr", "--alignments", "short.aln"],
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn augment_example_follows_the_sentence() {
    let dir = example_dir();
    write(
        dir.path(),
        "a.aln",
        &format!("# alignments\n{CRK_CAS_ALIGNMENT}\n"),
    );
    let out = stdout(&run(
        dir.path(),
        &["augment", "--corpus", "g.amr", "--alignments", "a.aln"],
    ));
    let docs = parse_corpus(&out).documents;
    let tree = amrkit::seq::anonymize(&docs[1].graph);
    assert_eq!(
        tree,
        amrkit::seq::text_to_tree(CRK_CAS_WORD_ORDER_TREE).unwrap()
    );
}

#[test]
fn orderings_of_the_example() {
    let dir = example_dir();
    let out = stdout(&run(dir.path(), &["orderings", "g.amr"]));
    assert_eq!(out.lines().filter(|l| l.starts_with('(')).count(), 8);
    let out = stdout(&run(dir.path(), &["orderings", "g.amr", "--cap", "3"]));
    assert_eq!(out.lines().filter(|l| l.starts_with('(')).count(), 3);
}

#[test]
fn repair_and_prune_lines() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "raw.txt",
        "(a :ARG0 (b) :ARG0 (b)\n:ARG0 junk\n",
    );
    let out = run(dir.path(), &["repair", "raw.txt"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["(a :ARG0 (b) :ARG0 (b))", "(amr-unknown)"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("1 of 2"));
    write(dir.path(), "fixed.txt", &text);
    let pruned = stdout(&run(dir.path(), &["prune", "fixed.txt"]));
    assert_eq!(pruned.lines().next(), Some("(a :ARG0 (b))"));
}

#[test]
fn wiki_table_and_wikify() {
    let dir = tempfile::tempdir().unwrap();
    let mut gold = String::new();
    for i in 0..4 {
        let wiki = if i < 3 { ":wiki \"DNA\" " } else { "" };
        gold.push_str(&format!(
            "# ::id {i}\n(p / protein {wiki}:name (n / name :op1 \"DNA\"))\n\n"
        ));
    }
    write(dir.path(), "gold.amr", &gold);
    let table = stdout(&run(
        dir.path(),
        &["build-wiki-table", "--gold", "gold.amr", "-o", "t.tsv"],
    ));
    assert!(table.is_empty());
    assert_eq!(
        std::fs::read_to_string(dir.path().join("t.tsv")).unwrap(),
        "DNA\tDNA\t3\t4\n"
    );
    write(
        dir.path(),
        "in.amr",
        "# ::id x\n(p / protein :name (n / name :op1 \"DNA\"))\n",
    );
    let out = stdout(&run(
        dir.path(),
        &["wikify", "--corpus", "in.amr", "--table", "t.tsv"],
    ));
    assert!(out.contains(":wiki \"DNA\""), "{out}");
    let out = stdout(&run(
        dir.path(),
        &[
            "wikify",
            "--corpus",
            "in.amr",
            "--table",
            "t.tsv",
            "--threshold",
            "0.8",
        ],
    ));
    assert!(!out.contains(":wiki"), "{out}");
}

#[test]
fn vocab_encode_pos_and_trainer_config() {
    let dir = example_dir();
    let tags: String = CRK_CAS_SENTENCE
        .split_whitespace()
        .map(|w| format!("{w}\tNN\n"))
        .collect();
    write(dir.path(), "pos.tsv", &tags);
    stdout(&run(
        dir.path(),
        &[
            "build-vocab",
            "--corpus",
            "g.amr",
            "--pos",
            "pos.tsv",
            "-o",
            "v.txt",
        ],
    ));
    let vocab = std::fs::read_to_string(dir.path().join("v.txt")).unwrap();
    assert!(vocab.lines().any(|l| l == ":ARG0"));
    assert!(vocab.lines().any(|l| l == "⟨NN⟩"));

    let annotated = stdout(&run(
        dir.path(),
        &["pos-annotate", "--corpus", "g.amr", "--pos", "pos.tsv"],
    ));
    assert!(annotated.starts_with("Crk ⟨NN⟩ binding ⟨NN⟩"));
    write(dir.path(), "a.txt", &annotated);
    let ids = stdout(&run(dir.path(), &["encode", "a.txt", "--vocab", "v.txt"]));
    let first: Vec<&str> = ids.lines().next().unwrap().split(' ').collect();
    // "Crk" is three characters, then a space and the tag super-character.
    let vocab_lines: Vec<&str> = vocab.lines().collect();
    assert_eq!(vocab_lines[first[4].parse::<usize>().unwrap()], "⟨NN⟩");

    let cfg = stdout(&run(
        dir.path(),
        &["emit-trainer-config", "--vocab", "v.txt"],
    ));
    assert!(cfg.contains("Layers = 1"));
    assert!(cfg.contains(&format!("Vocabulary = {}", vocab_lines.len())));
    write(dir.path(), "base.txt", "Layers = 2\n");
    let cfg = stdout(&run(
        dir.path(),
        &["emit-trainer-config", "--base", "base.txt"],
    ));
    assert!(cfg.contains("Layers = 2") && cfg.contains("Nodes = 400"));
    write(dir.path(), "bad.txt", "Layers = 0\n");
    assert_eq!(
        run(dir.path(), &["emit-trainer-config", "--base", "bad.txt"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn ensemble_oracle_compare() {
    let dir = example_dir();
    let gold = std::fs::read_to_string(dir.path().join("g.amr")).unwrap();
    write(
        dir.path(),
        "other.amr",
        "# ::id crk\n(r / require-01 :ARG0 (c / cell))\n",
    );
    write(dir.path(), "copy.amr", &gold);
    let runs = [
        "--run",
        "other.amr",
        "--run",
        "same=g.amr",
        "--run",
        "copy.amr",
    ];

    let mut args = vec!["ensemble", "--seed", "1", "--report", "r.csv"];
    args.extend(runs);
    let chosen = stdout(&run(dir.path(), &args));
    assert_eq!(
        parse_corpus(&chosen).documents[0].graph,
        parse_corpus(&gold).documents[0].graph
    );
    let report = std::fs::read_to_string(dir.path().join("r.csv")).unwrap();
    assert!(
        report.starts_with("id,parser,row_sum\ncrk,same,"),
        "{report}"
    );

    let mut args = vec![
        "oracle", "--seed", "1", "--gold", "g.amr", "--format", "csv",
    ];
    args.extend(runs);
    let out = stdout(&run(dir.path(), &args));
    assert_eq!(
        out,
        "id,oracle,oracle_f,selected,selected_f\ncrk,same,1.0000,same,1.0000\n"
    );

    let mut args = vec!["compare", "--seed", "1", "--gold", "g.amr"];
    args.extend(runs);
    let out = stdout(&run(dir.path(), &args));
    assert!(out.contains("tie:same+copy"), "{out}");
    assert!(
        out.ends_with("parser,wins\nother,0\nsame,0\ncopy,0\ntie,1\n"),
        "{out}"
    );

    let out = run(dir.path(), &["ensemble", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn evaluate_and_length_report() {
    let dir = example_dir();
    let out = stdout(&run(
        dir.path(),
        &[
            "evaluate", "--gold", "g.amr", "--test", "g.amr", "--seed", "2",
        ],
    ));
    assert_eq!(out.lines().count(), 9);
    assert!(out.lines().all(|l| l.contains("1.0000")));
    assert!(out.contains("(empty)"));
    let csv = stdout(&run(
        dir.path(),
        &[
            "length-report",
            "--gold",
            "g.amr",
            "--test",
            "g.amr",
            "--seed",
            "2",
            "--edges",
            "5,12",
            "--format",
            "csv",
        ],
    ));
    assert_eq!(csv, "max_len,count,f\n5,0,\n12,1,1.0000\n");
}
