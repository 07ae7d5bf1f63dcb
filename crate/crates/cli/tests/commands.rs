use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn smatrix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smatrix"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn count_examples() {
    let o = smatrix(&["count", "lambda", "--n", "4", "--k", "2", "--method", "all"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "90\n"));

    let o = smatrix(&["count", "mu", "--n", "3", "--k", "1", "--method", "formula"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "46656\n"));

    let o = smatrix(&[
        "count", "lambda", "--n", "9", "--k", "2", "--method", "brute",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--force"));
}

#[test]
fn count_rejects_inapplicable_method_and_sizes() {
    let o = smatrix(&[
        "count", "lambda", "--n", "5", "--k", "3", "--method", "anand",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("explicit"));
    assert_eq!(
        code(&smatrix(&["count", "lambda", "--n", "3", "--k", "4"])),
        2
    );
    assert_eq!(
        code(&smatrix(&["count", "lambda", "--n", "0", "--k", "1"])),
        2
    );
    assert_eq!(
        code(&smatrix(&["count", "lambda", "--n", "x", "--k", "1"])),
        2
    );
}

#[test]
fn count_machine_report_lists_each_method() {
    let o = smatrix(&[
        "--machine",
        "count",
        "lambda",
        "--n",
        "5",
        "--k",
        "2",
        "--method",
        "all",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for m in ["sum", "anand", "good", "system", "brute"] {
        assert!(text.contains(&format!("method.{m}=2040\n")), "{text}");
    }
    assert!(text.ends_with("value=2040\n"));
}

#[test]
fn forced_brute_prints_estimate() {
    let o = smatrix(&[
        "count", "lambda", "--n", "8", "--k", "1", "--method", "brute", "--force",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "40320\n");
    assert!(stderr(&o).contains("estimated search size"));
}

#[test]
fn generate_count_only() {
    let o = smatrix(&[
        "generate",
        "--n",
        "2",
        "--algorithm",
        "bijection",
        "--count-only",
    ]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "16\n"));

    let o = smatrix(&[
        "generate",
        "--n",
        "3",
        "--algorithm",
        "naive",
        "--count-only",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "46656\ncandidates examined: 362880\n");
}

#[test]
fn generate_first_matrix() {
    let o = smatrix(&[
        "generate",
        "--n",
        "2",
        "--algorithm",
        "bijection",
        "--limit",
        "1",
        "--format",
        "bm01",
    ]);
    assert_eq!(code(&o), 0);
    // all-<1,2> pre-image: block (s,t) holds its one at local (t,s)
    assert_eq!(stdout(&o), "4\n1000\n0010\n0100\n0001\n");
    assert!(stderr(&o).contains("emitted: 1"));
}

#[test]
fn generate_skip_continues_the_stream() {
    let all = stdout(&smatrix(&[
        "generate",
        "--n",
        "2",
        "--algorithm",
        "bijection",
    ]));
    let lines: Vec<&str> = all.lines().collect();
    assert_eq!(lines.len(), 17);
    let tail = stdout(&smatrix(&[
        "generate",
        "--n",
        "2",
        "--algorithm",
        "bijection",
        "--skip",
        "10",
        "--limit",
        "3",
    ]));
    let tail_lines: Vec<&str> = tail.lines().collect();
    assert_eq!(tail_lines[0], lines[0]);
    assert_eq!(&tail_lines[1..], &lines[11..14]);
}

#[test]
fn generate_naive_matches_bijection_as_a_set() {
    let mut a: Vec<String> = stdout(&smatrix(&["generate", "--n", "2", "--algorithm", "naive"]))
        .lines()
        .map(String::from)
        .collect();
    let mut b: Vec<String> = stdout(&smatrix(&[
        "generate",
        "--n",
        "2",
        "--algorithm",
        "bijection",
    ]))
    .lines()
    .map(String::from)
    .collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn generate_to_file_and_guard() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.pim");
    let o = smatrix(&[
        "generate",
        "--n",
        "2",
        "--algorithm",
        "bijection",
        "--format",
        "pim",
        "--limit",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "emitted: 2\n");
    assert_eq!(
        fs::read_to_string(&path).unwrap(),
        "2\n1 2\n1 2\n1 2\n1 2\n2\n1 2\n1 2\n1 2\n2 1\n"
    );

    let bad = dir.path().join("missing").join("x.spm");
    let o = smatrix(&[
        "generate",
        "--n",
        "2",
        "--algorithm",
        "bijection",
        "--out",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);

    assert_eq!(
        code(&smatrix(&[
            "generate",
            "--n",
            "4",
            "--algorithm",
            "bijection"
        ])),
        2
    );
    assert_eq!(
        code(&smatrix(&[
            "generate",
            "--n",
            "4",
            "--algorithm",
            "naive",
            "--count-only"
        ])),
        2
    );
    let o = smatrix(&[
        "generate",
        "--n",
        "4",
        "--algorithm",
        "bijection",
        "--limit",
        "5",
        "--count-only",
    ]);
    assert_eq!(stdout(&o), "5\n");
}

#[test]
fn verify_checks() {
    let o = smatrix(&["verify", "bijection", "--n", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("16/16 roundtrips pass"));

    let o = smatrix(&["verify", "disjointness", "--n", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("256/256 pair equivalences pass"));

    let o = smatrix(&["verify", "naive-equivalence", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("sets equal (46656 elements)"));

    let o = smatrix(&["verify", "sudoku-roundtrip", "--n", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("288/288"));

    let o = smatrix(&[
        "verify",
        "bijection",
        "--n",
        "5",
        "--samples",
        "20",
        "--seed",
        "7",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("sampled"));

    assert_eq!(
        code(&smatrix(&["verify", "naive-equivalence", "--n", "4"])),
        2
    );
}

#[test]
fn verify_sampling_is_deterministic() {
    let args = [
        "--machine",
        "verify",
        "disjointness",
        "--n",
        "3",
        "--samples",
        "200",
        "--seed",
        "3",
    ];
    assert_eq!(stdout(&smatrix(&args)), stdout(&smatrix(&args)));
}

#[test]
fn bench_ratios() {
    let o = smatrix(&["bench", "--n", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("24/16 = 3/2"));

    let o = smatrix(&["bench", "--n", "4"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("20922789888000/110075314176"));
    assert!(!text.contains("naive:"));

    let o = smatrix(&["--machine", "bench", "--n", "3", "--repetitions", "1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("ratio_numerator=362880\n"));
    assert!(text.contains("ratio_denominator=46656\n"));
    assert!(text.contains("naive_survivors=46656\n"));
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const GRID: &str = "2\n1 2 3 4\n3 4 1 2\n2 1 4 3\n4 3 2 1\n";

#[test]
fn sudoku_enumerate_and_validate() {
    let o = smatrix(&["sudoku", "enumerate", "--n", "2", "--count-only"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "288\n"));

    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.sdk", GRID);
    assert_eq!(code(&smatrix(&["sudoku", "validate", &good])), 0);

    // swapping two cells of row 1 repeats a value inside block (1,1)
    let bad = write(
        dir.path(),
        "bad.sdk",
        "2\n1 2 3 4\n3 4 1 2\n2 1 4 3\n4 3 1 2\n",
    );
    let o = smatrix(&["sudoku", "validate", &bad]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("column"), "{}", stdout(&o));

    let block = write(
        dir.path(),
        "block.sdk",
        "2\n1 2 3 4\n2 1 4 3\n3 4 1 2\n4 3 2 1\n",
    );
    let o = smatrix(&["sudoku", "validate", &block]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("block"), "{}", stdout(&o));

    let malformed = write(dir.path(), "m.sdk", "2\n1 2 3 4\n3 4 1\n");
    let o = smatrix(&["sudoku", "validate", &malformed]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    assert_eq!(
        code(&smatrix(&["sudoku", "validate", "/nonexistent/x.sdk"])),
        2
    );
}

#[test]
fn sudoku_decompose_compose_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let grid = write(dir.path(), "g.sdk", GRID);
    let parts = dir.path().join("parts");
    let o = smatrix(&[
        "sudoku",
        "decompose",
        &grid,
        "--out",
        parts.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let files: Vec<String> = (1..=4)
        .map(|v| {
            parts
                .join(format!("A{v}.spm"))
                .to_str()
                .unwrap()
                .to_string()
        })
        .collect();
    assert_eq!(fs::read_to_string(&files[0]).unwrap(), "2\n1 3 2 4\n");

    let mut args = vec!["sudoku", "compose"];
    args.extend(files.iter().map(String::as_str));
    let o = smatrix(&args);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), GRID);

    let o = smatrix(&["sudoku", "decompose", &grid]);
    let stream = write(dir.path(), "all.spm", &stdout(&o));
    let o = smatrix(&["sudoku", "compose", &stream]);
    assert_eq!(stdout(&o), GRID);
}

#[test]
fn sudoku_compose_rejects_overlap() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.spm", "2\n1 3 2 4\n");
    let o = smatrix(&["sudoku", "compose", &a, &a, &a, &a]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("1"));
    let bad = write(dir.path(), "bad.spm", "2\n1 2 3 4\n");
    let o = smatrix(&["sudoku", "compose", &bad, &bad, &bad, &bad]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn sudoku_enumerate_guard() {
    assert_eq!(
        code(&smatrix(&[
            "sudoku",
            "enumerate",
            "--n",
            "3",
            "--count-only"
        ])),
        2
    );
}
