//! End-to-end runs of the `hexpivot` binary.

use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexpivot")).current_dir(dir).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn single_cell_gives_empty_plan() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "a.cfg", "# lone module\n0 0\n");
    let o = run(d.path(), &["plan", "--in", "a.cfg", "--target", "a.cfg", "--model", "monkey", "--out", "p.jsonl"]);
    assert_eq!(code(&o), 0, "{o:?}");
    assert_eq!(std::fs::read_to_string(d.path().join("p.jsonl")).unwrap(), "");
}

#[test]
fn triangle_to_path_plan_verifies() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "tri.cfg", "0 0\n0 1\n1 0\n");
    write(d.path(), "path.cfg", "5 5\n5 6\n5 7\n");
    let o = run(d.path(), &["plan", "--in", "tri.cfg", "--target", "path.cfg", "--out", "p.jsonl", "--stats"]);
    assert_eq!(code(&o), 0, "{o:?}");
    assert!(stdout(&o).contains("moves_per_n3\t"));
    let o = run(d.path(), &["verify", "--in", "tri.cfg", "--plan", "p.jsonl", "--model", "monkey", "--expect", "path.cfg"]);
    assert_eq!(code(&o), 0, "{o:?}");
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "a.cfg", "0 0\n0 1\n1 0\n");
    write(d.path(), "b.cfg", "0 0\n0 1\n");
    write(d.path(), "bad.cfg", "0 0\nzero one\n");
    let plan = |a: &str, b: &str, model: &str| {
        code(&run(d.path(), &["plan", "--in", a, "--target", b, "--model", model, "--out", "p.jsonl"]))
    };
    assert_eq!(plan("bad.cfg", "a.cfg", "monkey"), 2);
    assert_eq!(plan("missing.cfg", "a.cfg", "monkey"), 2);
    assert_eq!(plan("a.cfg", "b.cfg", "monkey"), 3);
    assert_eq!(plan("a.cfg", "a.cfg", "restricted"), 5);
    assert_eq!(code(&run(d.path(), &["explore", "--n", "9"])), 7);
    assert_eq!(code(&run(d.path(), &["random", "--n", "0", "--seed", "1", "--out", "z.cfg"])), 2);
    assert_eq!(code(&run(d.path(), &["frobnicate"])), 2);
}

#[test]
fn corrupted_step_is_reported() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(d.path(), &["random", "--n", "10", "--seed", "3", "--out", "a.cfg"])), 0);
    assert_eq!(code(&run(d.path(), &["random", "--n", "10", "--seed", "4", "--out", "b.cfg"])), 0);
    let o = run(d.path(), &["plan", "--in", "a.cfg", "--target", "b.cfg", "--out", "p.jsonl"]);
    assert_eq!(code(&o), 0, "{o:?}");
    let text = std::fs::read_to_string(d.path().join("p.jsonl")).unwrap();
    let first_cell = std::fs::read_to_string(d.path().join("a.cfg")).unwrap();
    let (q, r) = first_cell.lines().next().unwrap().split_once(' ').unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let at = lines[0].find("\"dest\":").unwrap();
    let end = lines[0][at..].find(']').unwrap() + at + 1;
    lines[0].replace_range(at..end, &format!("\"dest\":[{q},{r}]"));
    write(d.path(), "bad.jsonl", &(lines.join("\n") + "\n"));
    let o = run(d.path(), &["verify", "--in", "a.cfg", "--plan", "bad.jsonl", "--model", "monkey"]);
    assert_eq!(code(&o), 6, "{o:?}");
    assert!(String::from_utf8_lossy(&o.stderr).contains("step 0"));
}

#[test]
fn plan_then_its_reverse_returns_home() {
    let d = tempfile::tempdir().unwrap();
    run(d.path(), &["random", "--n", "8", "--seed", "11", "--out", "a.cfg"]);
    run(d.path(), &["random", "--n", "8", "--seed", "12", "--out", "b.cfg"]);
    assert_eq!(code(&run(d.path(), &["plan", "--in", "a.cfg", "--target", "b.cfg", "--out", "ab.jsonl"])), 0);
    assert_eq!(code(&run(d.path(), &["plan", "--in", "b.cfg", "--target", "a.cfg", "--out", "ba.jsonl"])), 0);
    // a -> b then b' -> a, where b' is wherever the first plan ended
    let a = hexpivot::cli_io::read_config(&d.path().join("a.cfg")).unwrap();
    let ab = hexpivot::cli_io::read_plan(&d.path().join("ab.jsonl")).unwrap();
    let mut round = ab.clone();
    round.extend(ab.reverse_inverted());
    write(d.path(), "round.jsonl", &hexpivot::cli_io::write_plan(&round));
    let o = run(d.path(), &["verify", "--in", "a.cfg", "--plan", "round.jsonl", "--model", "monkey", "--expect", "a.cfg"]);
    assert_eq!(code(&o), 0, "{o:?}");
    assert_eq!(round.verify(&a).unwrap(), a);
}

#[test]
fn random_is_byte_identical() {
    let d = tempfile::tempdir().unwrap();
    run(d.path(), &["random", "--n", "30", "--seed", "7", "--out", "x.cfg"]);
    run(d.path(), &["random", "--n", "30", "--seed", "7", "--out", "y.cfg"]);
    let x = std::fs::read(d.path().join("x.cfg")).unwrap();
    assert_eq!(x, std::fs::read(d.path().join("y.cfg")).unwrap());
    assert_eq!(String::from_utf8(x).unwrap().lines().count(), 30);
}

#[test]
fn explore_counts() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["explore", "--n", "4", "--model", "monkey", "--components"]);
    assert!(stdout(&o).lines().any(|l| l == "nodes=44 components=1"), "{}", stdout(&o));
    assert!(stdout(&run(d.path(), &["explore", "--n", "2"])).starts_with("nodes=3 "));
    assert_eq!(stdout(&run(d.path(), &["explore", "--n", "1"])), "nodes=1 edges=0\n");
    let o = run(d.path(), &["explore", "--n", "4", "--rigid", "--threads", "3"]);
    assert!(stdout(&o).contains("nodes=44 rigid=0"));
}

#[test]
fn explore_cache_is_reused() {
    let d = tempfile::tempdir().unwrap();
    let cache = d.path().join("cache");
    std::fs::create_dir(&cache).unwrap();
    let go = || {
        Command::new(env!("CARGO_BIN_EXE_hexpivot"))
            .env("HEXPIVOT_CACHE_DIR", &cache)
            .args(["explore", "--n", "4", "--components"])
            .output()
            .unwrap()
    };
    let first = go();
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
    assert_eq!(first.stdout, go().stdout);
}

#[test]
fn render_writes_one_frame_per_move() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "tri.cfg", "0 0\n0 1\n1 0\n");
    let tri = hexpivot::cli_io::read_config(&d.path().join("tri.cfg")).unwrap();
    let mv = hexpivot::move_model::legal_moves(&tri, hexpivot::ModelId::HexMonkey)[0];
    let mut plan = hexpivot::planner::MovePlan::new();
    plan.push(hexpivot::planner::Step::new(mv, "manual", ""));
    write(d.path(), "one.jsonl", &hexpivot::cli_io::write_plan(&plan));
    let o = run(d.path(), &["render", "--in", "tri.cfg", "--plan", "one.jsonl", "--out", "frames"]);
    assert_eq!(code(&o), 0, "{o:?}");
    let mut names: Vec<_> = std::fs::read_dir(d.path().join("frames")).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names, ["frame-0000.svg", "frame-0001.svg"]);
    let svg = std::fs::read_to_string(d.path().join("frames/frame-0000.svg")).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 3);
}
