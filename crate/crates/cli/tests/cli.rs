use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use robust_spanners::graph::write_edge_list;
use robust_spanners::synthetic::PlantedPartition;
use tempfile::TempDir;

struct Fixture {
    dir: TempDir,
    graph: PathBuf,
    communities: PathBuf,
}

impl Fixture {
    fn planted() -> Self {
        let (g, c) = PlantedPartition {
            sizes: vec![40, 50, 60, 30, 20, 25],
            p_in: 0.15,
            p_out: 0.02,
            seed: 17,
        }
        .generate()
        .unwrap();
        let dir = TempDir::new().unwrap();
        let graph = dir.path().join("g.txt");
        let mut edges = Vec::new();
        write_edge_list(&g, &mut edges).unwrap();
        fs::write(&graph, edges).unwrap();
        let communities = dir.path().join("c.txt");
        let labels: String = c
            .as_slice()
            .iter()
            .enumerate()
            .map(|(v, k)| format!("{v} {k}\n"))
            .collect();
        fs::write(&communities, labels).unwrap();
        Fixture {
            dir,
            graph,
            communities,
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, contents).unwrap();
        p
    }
}

fn rspan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rspan")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn score_top_k_writes_25_rows_and_reports_counts() {
    let f = Fixture::planted();
    let out = f.path("scores.csv");
    let o = rspan(&[
        "score",
        "--graph",
        s(&f.graph),
        "--communities",
        s(&f.communities),
        "--top-communities",
        "5",
        "--top-k",
        "25",
        "--out",
        s(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "rank,vertex_id,rsi");
    assert_eq!(lines.len(), 26);
    let err = stderr(&o);
    assert!(
        err.contains("|V_b|=") && err.contains("|E_b|=") && err.contains("omega_max=") && err.contains("triad_terms=")
    );
}

#[test]
fn output_is_identical_across_thread_counts() {
    let f = Fixture::planted();
    let run = |threads: &str| {
        let o = rspan(&[
            "score",
            "--graph",
            s(&f.graph),
            "--communities",
            s(&f.communities),
            "--threads",
            threads,
            "-q",
        ]);
        assert!(o.status.success());
        o.stdout
    };
    let one = run("1");
    assert!(one.len() > 100);
    assert_eq!(one, run("2"));
    assert_eq!(one, run("4"));
}

#[test]
fn json_and_matrix_dump() {
    let f = Fixture::planted();
    let matrix = f.path("m.csv");
    let o = rspan(&[
        "score",
        "--graph",
        s(&f.graph),
        "--communities",
        s(&f.communities),
        "--targets",
        "0,1,2",
        "--format",
        "json",
        "--top-k",
        "3",
        "--dump-matrix",
        s(&matrix),
        "-q",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("[{\"rank\":1,"), "{text}");
    assert_eq!(text.matches("\"rank\"").count(), 3);
    let dump = fs::read_to_string(&matrix).unwrap();
    assert_eq!(dump.lines().next().unwrap(), "border_id,vertex_id,0,1,2");
}

#[test]
fn oracle_agrees_on_small_graph() {
    let f = Fixture::planted();
    let o = rspan(&[
        "oracle",
        "--graph",
        s(&f.graph),
        "--communities",
        s(&f.communities),
        "--targets",
        "1,2,3",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let line = stdout(&o);
    let dev: f64 = line
        .split_whitespace()
        .find_map(|t| t.strip_prefix("max_relative_deviation="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(dev <= 1e-9);

    let o = rspan(&[
        "oracle",
        "--graph",
        s(&f.graph),
        "--communities",
        s(&f.communities),
        "--max-vertices",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--force"));
}

#[test]
fn no_border_vertices_gives_empty_file_and_warning() {
    let f = Fixture::planted();
    let g = f.write("two.txt", "0 1\n2 3\n");
    let c = f.write("two_c.txt", "0 1\n1 1\n2 2\n3 2\n");
    let out = f.path("empty.csv");
    let o = rspan(&["score", "--graph", s(&g), "--communities", s(&c), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning: no border vertices"));
    assert_eq!(fs::read_to_string(&out).unwrap(), "vertex_id,rsi\n");
}

#[test]
fn exit_codes() {
    let f = Fixture::planted();
    let (g, c) = (s(&f.graph), s(&f.communities));

    assert_eq!(rspan(&["--help"]).status.code(), Some(0));
    assert_eq!(rspan(&["score", "--graph", g]).status.code(), Some(1));
    assert_eq!(
        rspan(&["score", "--graph", g, "--communities", c, "--format", "xml"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        rspan(&[
            "score",
            "--graph",
            g,
            "--communities",
            c,
            "--targets",
            "1,2",
            "--top-communities",
            "3"
        ])
        .status
        .code(),
        Some(1)
    );

    let missing = rspan(&["score", "--graph", "/nonexistent/g.txt", "--communities", c]);
    assert_eq!(missing.status.code(), Some(2));
    assert_eq!(stderr(&missing).lines().count(), 1);

    let bad = f.write("bad.txt", "0 1\n1 x\n");
    let o = rspan(&["score", "--graph", s(&bad), "--communities", c]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    assert_eq!(
        rspan(&["score", "--graph", g, "--communities", c, "--targets", "0,99"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        rspan(&["score", "--graph", g, "--communities", c, "--top-communities", "40"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn robustness_from_score_file() {
    let f = Fixture::planted();
    let scores = f.path("scores.csv");
    let o = rspan(&[
        "score",
        "--graph",
        s(&f.graph),
        "--communities",
        s(&f.communities),
        "--out",
        s(&scores),
        "-q",
    ]);
    assert!(o.status.success());

    let series = f.path("series.csv");
    let o = rspan(&[
        "eval",
        "robustness",
        "--graph",
        s(&f.graph),
        "--communities",
        s(&f.communities),
        "--scores",
        s(&scores),
        "--trials",
        "3",
        "--step",
        "0.25",
        "--max",
        "0.5",
        "--seed",
        "4",
        "--out",
        s(&series),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&series).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "set,fraction,mean_awcc,stderr");
    // 4 series of 3 fractions each
    assert_eq!(lines.len(), 13);
    for label in ["rsi-edge", "comparison-edge", "rsi-node", "comparison-node"] {
        assert_eq!(lines.iter().filter(|l| l.starts_with(&format!("{label},"))).count(), 3);
    }

    let compare = f.write("set.txt", "1\n2\n3\n");
    let o = rspan(&[
        "eval",
        "robustness",
        "--graph",
        s(&f.graph),
        "--communities",
        s(&f.communities),
        "--compare",
        s(&compare),
        "--mode",
        "node",
        "--trials",
        "2",
        "--step",
        "0.5",
        "--max",
        "0.5",
        "-q",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn shii_for_vertex_file() {
    let f = Fixture::planted();
    let seeds = f.write("seeds.txt", "0\n45\n100\n");
    let o = rspan(&[
        "eval",
        "shii",
        "--graph",
        s(&f.graph),
        "--communities",
        s(&f.communities),
        "--vertices",
        s(&seeds),
        "--model",
        "lt",
        "--runs",
        "40",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "vertex,shii_mean,shii_stderr");
    assert_eq!(text.lines().count(), 4);
    assert!(stderr(&o).contains("mean SHII over 3 vertices"));

    let o = rspan(&[
        "eval",
        "shii",
        "--graph",
        s(&f.graph),
        "--communities",
        s(&f.communities),
        "--ic-probability",
        "1.5",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn info_reports_statistics_and_bounds() {
    let f = Fixture::planted();
    let o = rspan(&[
        "info",
        "--graph",
        s(&f.graph),
        "--communities",
        s(&f.communities),
        "--p",
        "0.02",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("vertices: 225"));
    assert!(text.contains("communities: 6"));
    assert!(text.contains("smallest_community: 20"));
    assert!(text.contains("border_probability_bounds: ["));
}
