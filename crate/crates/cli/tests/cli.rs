use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parity-si"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn generated(dir: &TempDir, n: u32) -> String {
    let path = dir.path().join(format!("g{n}.pg"));
    let path = path.to_str().unwrap();
    assert!(cli(&["generate", "--n", &n.to_string(), "--out", path])
        .status
        .success());
    path.to_string()
}

#[test]
fn generate_writes_pgsolver_files() {
    let dir = TempDir::new().unwrap();
    let two = std::fs::read_to_string(generated(&dir, 2)).unwrap();
    assert_eq!(two.lines().next(), Some("parity 38;"));
    assert_eq!(two.lines().count(), 40);
    let one = std::fs::read_to_string(generated(&dir, 1)).unwrap();
    assert_eq!(one.lines().skip(1).count(), 25);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.pg");
    assert_eq!(
        cli(&["generate", "--n", "0", "--out", out.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cli(&["generate", "--n", "two", "--out", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(
        cli(&["bench", "--n-min", "3", "--n-max", "2", "--csv", "x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cli(&["frobnicate"]).status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn solve_reports_winners_and_iterations() {
    let dir = TempDir::new().unwrap();
    let o = cli(&["solve", &generated(&dir, 2), "--oracle"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("iterations: 42\n"));
    assert!(text.contains("W0: \n"));
    assert!(text.contains(&format!(
        "W1: {}\n",
        (0..39).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
    )));
    assert!(text.contains("oracle: agrees"));

    let three = stdout(&cli(&["solve", &generated(&dir, 3)]));
    assert!(three.contains("W0: \n"));
}

#[test]
fn solve_splits_a_small_game() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("small.pg");
    // Node 0 can escape to the even self-loop at 1; node 2 is stuck on odd.
    std::fs::write(&path, "parity 2;\n0 0 0 1,2;\n1 4 1 1;\n2 3 1 2;\n").unwrap();
    let o = cli(&["solve", path.to_str().unwrap(), "--oracle"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("W0: 0 1\n"), "{text}");
    assert!(text.contains("W1: 2\n"), "{text}");
}

#[test]
fn solve_writes_a_trace_dump() {
    let dir = TempDir::new().unwrap();
    let trace = dir.path().join("trace.tsv");
    let o = cli(&[
        "solve",
        &generated(&dir, 1),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let dump = std::fs::read_to_string(&trace).unwrap();
    let lines: Vec<&str> = dump.lines().collect();
    assert_eq!(lines.len(), 17);
    for (i, line) in lines.iter().enumerate() {
        let mut fields = line.split('\t');
        assert_eq!(fields.next(), Some(i.to_string().as_str()));
        assert!(fields.all(|f| {
            let (v, w) = f.split_once('→').unwrap();
            !v.is_empty() && !w.is_empty()
        }));
    }
    assert!(lines[0].starts_with("0\ts→"));
    assert!(lines[0].contains("\tx→y"));
    assert_ne!(lines[0], lines[1]);
}

#[test]
fn invalid_games_exit_with_three() {
    let dir = TempDir::new().unwrap();
    let dup = dir.path().join("dup.pg");
    std::fs::write(&dup, "0 7 0 1;\n1 7 1 0;\n").unwrap();
    let o = cli(&["solve", dup.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("duplicate priorities 7"));

    let broken = dir.path().join("broken.pg");
    std::fs::write(&broken, "0 1 0 1;\n1 2 1 5;\n").unwrap();
    let o = cli(&["solve", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 2"));

    let dead = dir.path().join("dead.pg");
    std::fs::write(&dead, "0 1 0 1;\n1 2 1 ;\n").unwrap();
    assert_eq!(
        cli(&["solve", dead.to_str().unwrap()]).status.code(),
        Some(3)
    );
}

#[test]
fn missing_input_is_an_io_failure() {
    let o = cli(&["solve", "/nonexistent/game.pg"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("reading /nonexistent/game.pg"));
}

// The solver makes one policy application fewer than the predicted count,
// so verification reports the gap and exits with 1.
#[test]
fn verify_reports_the_count_and_trace() {
    let o = cli(&["verify", "--n", "3", "--trace"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("n=3 steps=94 expected=95 matched=94"));
    assert!(text.ends_with("94/95 steps matched\n"));

    let o = cli(&["verify", "--n", "1", "--trace"]);
    assert!(stderr(&o).contains("needs n >= 2"));
    assert_eq!(stdout(&o), "n=1 steps=16 expected=17 matched=0\n");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bench_stops_at_the_first_mismatching_row() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("bench.csv");
    let o = cli(&[
        "bench",
        "--n-min",
        "1",
        "--n-max",
        "3",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("n=1: 16 iterations, predicted 17"));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text, "n,nodes,edges,iterations,predicted,wall_time_ms\n");
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let path = generated(&dir, 2);
    let first = std::fs::read(&path).unwrap();
    assert_eq!(std::fs::read(generated(&dir, 2)).unwrap(), first);
    assert_eq!(
        stdout(&cli(&["solve", &path])),
        stdout(&cli(&["solve", &path]))
    );
    assert!(Path::new(&path).exists());
}
