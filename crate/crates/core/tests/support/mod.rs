//! Command-line example checks shared by the smoke tests and the
//! acceptance run.

#![allow(dead_code)]

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use polyscan::io::{parse_report, read_polygon};
use polyscan::polygon::is_simple;

pub fn polyscan(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyscan"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn expect(out: &Output, code: i32, stdout: Option<&str>) -> Result<(), String> {
    let got = out.status.code();
    if got != Some(code) {
        return Err(format!(
            "exit {got:?}, wanted {code}; stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    if let Some(want) = stdout {
        let text = String::from_utf8_lossy(&out.stdout);
        if text != want {
            return Err(format!("stdout {text:?}, wanted {want:?}"));
        }
    }
    Ok(())
}

fn stderr_prefix(out: &Output, kind: &str) -> Result<(), String> {
    let err = String::from_utf8_lossy(&out.stderr);
    let lines: Vec<_> = err.lines().collect();
    let prefix = format!("error[{kind}]: ");
    if lines.len() == 1 && lines[0].starts_with(&prefix) {
        Ok(())
    } else {
        Err(format!("stderr {err:?} lacks a single `{prefix}` line"))
    }
}

/// Runs every documented example in a scratch directory.
pub fn cli_examples() -> Vec<(&'static str, Result<(), String>)> {
    let tmp = tempfile::tempdir().expect("temp dir");
    let dir = tmp.path();
    let write = |name: &str, text: &str| fs::write(dir.join(name), text).expect("write fixture");
    write("bowtie.wkt", "POLYGON ((0 0, 2 2, 2 0, 0 2))\n");
    write("square.csv", "0,0\n2,0\n2,2\n0,2\n");
    write("closed.wkt", "POLYGON ((0 0, 1 0, 1 1, 0 0))\n");
    write("two.csv", "0,0\n1,1\n");
    write(
        "holes.wkt",
        "POLYGON ((0 0, 4 0, 4 4, 0 4), (1 1, 2 1, 2 2))\n",
    );
    write("multi.wkt", "MULTIPOLYGON (((0 0, 1 0, 1 1)))\n");
    write("pinch.wkt", "POLYGON ((0 0, 4 0, 2 0, 2 3, -1 3))\n");

    let mut results = Vec::new();

    results.push(("correct bowtie -> simple square", {
        let out = polyscan(
            dir,
            &["correct", "--input", "bowtie.wkt", "--output", "out.wkt"],
        );
        expect(&out, 0, Some("corrections=1\n")).and_then(|_| {
            let text = fs::read_to_string(dir.join("out.wkt")).map_err(|e| e.to_string())?;
            if text != "POLYGON ((0 0, 2 0, 2 2, 0 2, 0 0))\n" {
                return Err(format!("wrote {text:?}"));
            }
            let poly = read_polygon(&dir.join("out.wkt"), None).map_err(|e| e.to_string())?;
            is_simple(&poly)
                .then_some(())
                .ok_or_else(|| "output not simple".to_string())
        })
    }));

    for oracle in ["v2", "v3", "scan"] {
        results.push(("correct with each oracle", {
            let out = polyscan(
                dir,
                &[
                    "correct",
                    "--input",
                    "bowtie.wkt",
                    "--output",
                    "o.csv",
                    "--oracle",
                    oracle,
                ],
            );
            expect(&out, 0, None).and_then(|_| {
                let text = fs::read_to_string(dir.join("o.csv")).map_err(|e| e.to_string())?;
                (text == "0,0\n2,0\n2,2\n0,2\n")
                    .then_some(())
                    .ok_or(format!("{oracle} wrote {text:?}"))
            })
        }));
    }

    results.push(("report square csv -> k=0", {
        let out = polyscan(dir, &["report", "--input", "square.csv", "--format", "csv", "--json", "r.json"]);
        expect(&out, 0, Some("n=4 k=0 axis=x\n")).and_then(|_| {
            let text = fs::read_to_string(dir.join("r.json")).map_err(|e| e.to_string())?;
            let want = "{\"n\":4,\"k\":0,\"axis\":\"x\",\"events\":[],\"metrics\":{\"n_real\":4,\"n_supp\":null,\"explored\":2}}\n";
            (text == want).then_some(()).ok_or(format!("json {text:?}"))
        })
    }));

    results.push(("report bowtie -> one event at (1, 1)", {
        let out = polyscan(dir, &["report", "--input", "bowtie.wkt"]);
        expect(&out, 0, None).and_then(|_| {
            let doc =
                parse_report(&String::from_utf8_lossy(&out.stdout)).map_err(|e| e.to_string())?;
            let ev = &doc.events;
            (doc.k == 1
                && ev.len() == 1
                && ev[0].edge_i == 0
                && ev[0].edge_j == 2
                && ev[0].x == 1.0
                && ev[0].y == 1.0)
                .then_some(())
                .ok_or(format!("{doc:?}"))
        })
    }));

    results.push(("report honours --axis", {
        let out = polyscan(dir, &["report", "--input", "bowtie.wkt", "--axis", "y"]);
        expect(&out, 0, None).and_then(|_| {
            let doc =
                parse_report(&String::from_utf8_lossy(&out.stdout)).map_err(|e| e.to_string())?;
            (doc.axis == polyscan::Axis::Y)
                .then_some(())
                .ok_or(format!("axis {:?}", doc.axis))
        })
    }));

    results.push(("query bowtie edge 0 -> 2", {
        let out = polyscan(
            dir,
            &[
                "query",
                "--input",
                "bowtie.wkt",
                "--edge",
                "0",
                "--mode",
                "strict",
            ],
        );
        expect(&out, 0, Some("2\n"))
    }));

    results.push(("query --higher-only drops lower partners", {
        let out = polyscan(
            dir,
            &[
                "query",
                "--input",
                "bowtie.wkt",
                "--edge",
                "2",
                "--mode",
                "relaxed",
                "--higher-only",
            ],
        );
        expect(&out, 0, Some("\n"))
    }));

    results.push(("closing duplicate dropped", {
        let out = polyscan(
            dir,
            &["report", "--input", "closed.wkt", "--json", "c.json"],
        );
        expect(&out, 0, Some("n=3 k=0 axis=x\n"))
    }));

    results.push(("two-line csv -> too few vertices", {
        let out = polyscan(dir, &["report", "--input", "two.csv"]);
        expect(&out, 2, Some("")).and_then(|_| stderr_prefix(&out, "too-few-vertices"))
    }));

    results.push(("holes rejected", {
        let out = polyscan(dir, &["report", "--input", "holes.wkt"]);
        expect(&out, 2, None).and_then(|_| stderr_prefix(&out, "parse"))
    }));

    results.push(("multipolygon rejected", {
        let out = polyscan(dir, &["report", "--input", "multi.wkt"]);
        expect(&out, 2, None).and_then(|_| stderr_prefix(&out, "parse"))
    }));

    results.push(("degenerate input -> exit 1 with finding", {
        let out = polyscan(dir, &["report", "--input", "pinch.wkt"]);
        expect(&out, 1, Some("degenerate 0 2\n")).and_then(|_| stderr_prefix(&out, "degenerate"))
    }));

    results.push(("unknown subcommand -> usage", {
        let out = polyscan(dir, &["frobnicate"]);
        expect(&out, 2, None).and_then(|_| stderr_prefix(&out, "usage"))
    }));

    results.push(("unknown oracle -> usage", {
        let out = polyscan(
            dir,
            &[
                "correct",
                "--input",
                "bowtie.wkt",
                "--output",
                "x.wkt",
                "--oracle",
                "v9",
            ],
        );
        expect(&out, 2, None).and_then(|_| stderr_prefix(&out, "usage"))
    }));

    results.push(("missing file -> io", {
        let out = polyscan(dir, &["report", "--input", "absent.wkt"]);
        expect(&out, 2, None).and_then(|_| stderr_prefix(&out, "io"))
    }));

    results.push(("edge out of range", {
        let out = polyscan(dir, &["query", "--input", "bowtie.wkt", "--edge", "9"]);
        expect(&out, 2, None).and_then(|_| stderr_prefix(&out, "index"))
    }));

    results.push(("gen is reproducible", {
        let a = polyscan(
            dir,
            &[
                "gen",
                "--family",
                "random-star",
                "--n",
                "32",
                "--seed",
                "9",
                "--output",
                "a.wkt",
            ],
        );
        let b = polyscan(
            dir,
            &[
                "gen",
                "--family",
                "random-star",
                "--n",
                "32",
                "--seed",
                "9",
                "--output",
                "b.wkt",
            ],
        );
        expect(&a, 0, Some(""))
            .and_then(|_| expect(&b, 0, Some("")))
            .and_then(|_| {
                let (x, y) = (fs::read(dir.join("a.wkt")), fs::read(dir.join("b.wkt")));
                (x.ok() == y.ok())
                    .then_some(())
                    .ok_or_else(|| "outputs differ".to_string())
            })
    }));

    results.push(("bench writes its tables", {
        let out = polyscan(
            dir,
            &[
                "bench",
                "--family",
                "noisy-contour",
                "--sizes",
                "16,32,64",
                "--seeds",
                "1,2",
                "--out",
                "b",
            ],
        );
        expect(&out, 0, None).and_then(|_| {
            let bench = fs::read_to_string(dir.join("b/bench.csv")).map_err(|e| e.to_string())?;
            let fit = fs::read_to_string(dir.join("b/fit.csv")).map_err(|e| e.to_string())?;
            let ok = bench
                .starts_with("family,N,seed,algo,explored,avg_explored,k,n_real,n_supp\n")
                && bench.lines().count() == 1 + 3 * 2 * 4
                && fit.starts_with("family,algo,constant,exponent,correlation\n")
                && dir.join("b/scatter.svg").exists()
                && dir.join("b/overhead.csv").exists();
            ok.then_some(())
                .ok_or_else(|| "bad bench output".to_string())
        })
    }));

    results
}
