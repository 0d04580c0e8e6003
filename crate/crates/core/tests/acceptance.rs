//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode};

use junior_ghost::battery;
use junior_ghost::io::WitnessDocument;
use junior_ghost::reference::{ODOT_TABLE_L12_CSV, ODOT_TABLE_L6_CSV};
use junior_ghost::table::{OdotTable, TableFormat};
use serde_json::Value;

type Check = Result<String, String>;

fn cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_junior-ghost"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().ok_or("killed by signal")?;
    Ok((code, String::from_utf8(out.stdout).map_err(|e| e.to_string())?))
}

fn cli_ok(args: &[&str]) -> Result<String, String> {
    match cli(args)? {
        (0, out) => Ok(out),
        (c, _) => Err(format!("{args:?} exited with {c}")),
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn from_battery(f: fn() -> Result<(bool, String), junior_ghost::search::SearchError>) -> Check {
    match f() {
        Ok((true, detail)) => Ok(detail),
        Ok((false, detail)) => Err(detail),
        Err(e) => Err(e.to_string()),
    }
}

fn table_parity() -> Check {
    let mut comparisons = 0;
    for (l, reference) in [("6", ODOT_TABLE_L6_CSV), ("12", ODOT_TABLE_L12_CSV)] {
        let emitted = cli_ok(&["table", "--level", l, "--format", "csv"])?;
        let got = OdotTable::parse(&emitted, TableFormat::Csv).map_err(|e| e.to_string())?;
        let want = OdotTable::parse(reference, TableFormat::Csv).map_err(|e| e.to_string())?;
        ensure(got.level == want.level, "level differs")?;
        for (a, (x, y)) in got.rows.iter().zip(&want.rows).enumerate() {
            for (m, (p, q)) in x.iter().zip(y).enumerate() {
                ensure(p.is_some() == q.is_some(), format!("l={l} blank mismatch at ({a},{m})"))?;
                ensure(p == q, format!("l={l} value mismatch at ({a},{m})"))?;
                comparisons += 2;
            }
        }
    }
    ensure(comparisons == 360, format!("{comparisons} comparisons"))?;
    Ok("72 + 288 comparisons, all equal".into())
}

fn non_existence() -> Check {
    for l in ["2", "3", "4", "6", "12"] {
        let (code, out) = cli(&["search", "--banana", "3", "--level", l, "--support", "full", "--all"])?;
        ensure(code == 0, format!("level {l}: exit {code}"))?;
        ensure(out == "0 witness(es)\n", format!("level {l}: {out}"))?;
    }
    let out = cli_ok(&[
        "classify", "--level", "12", "--max-edges", "3", "--family", "all-stable", "--genus-cap", "2", "--format", "json",
    ])?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let three = &v["entries"][2];
    ensure(three["edges"] == 3 && three["outcome"] == "none", format!("all-stable entry {three}"))?;
    Ok(format!(
        "banana-3 empty at 2,3,4,6,12; {} all-stable 3-edge graphs empty at 12",
        three["graphs"]
    ))
}

fn sieve() -> Check {
    let v: Value = serde_json::from_str(&cli_ok(&["sieve", "--level", "12", "--format", "json"])?).map_err(|e| e.to_string())?;
    let sets = |key: &str| -> Vec<Value> { v[key].as_array().cloned().unwrap_or_default() };
    let expect: Vec<Value> = serde_json::from_str("[[1,1,1],[1,1,5],[1,1,7],[1,5,5],[2,2,2],[3,3,3]]").unwrap();
    ensure(v["entries"].as_array().map(Vec::len) == Some(41), "not 41 candidates")?;
    ensure(sets("survivors") == expect, "survivors differ")?;
    ensure(sets("listed_survivors") == expect, "listed survivors differ")?;
    ensure(v["missing_from_listed"] == serde_json::json!([[2, 4, 5]]), "missing multiset")?;
    ensure(v["named_admissible"] == serde_json::json!([12, 12]), "named triples")?;
    ensure(v["listed_arrangements_admissible"] == true, "listed arrangements")?;
    ensure(v["admissible_in_ker"] == 0, "admissible M in Ker")?;
    let text = cli_ok(&["sieve", "--level", "12"])?;
    let verdict = text
        .lines()
        .find(|l| l.starts_with("verdict for {2,4,5}"))
        .ok_or("no verdict for {2,4,5}")?;
    Ok(format!("6 survivors, 12 named M, {} admissible M all outside Ker; {verdict}", v["admissible_total"]))
}

fn codimension_four() -> Check {
    let doc = WitnessDocument::parse(&cli_ok(&["preset", "--name", "l12codim4"])?).map_err(|e| e.to_string())?;
    let w = doc.verify().map_err(|e| e.to_string())?;
    ensure((doc.age.numerator, doc.age.denominator) == (8, 12), "age")?;
    ensure(w.multiplicity.raw() == [1, 5, 2, 2] && w.twist.raw() == [2, 2, 2, 2], "preset values")?;
    let found: Vec<WitnessDocument> = serde_json::from_str(&cli_ok(&[
        "search", "--banana", "4", "--level", "12", "--all", "--format", "json",
    ])?)
    .map_err(|e| e.to_string())?;
    ensure(found.iter().any(|d| d.m == doc.m && d.a == doc.a), "preset not found by search")?;
    Ok(format!("age 8/12, found among {} witnesses", found.len()))
}

fn determinism() -> Check {
    let (c1, first) = cli(&["verify-paper"])?;
    let (c2, second) = cli(&["--threads", "1", "verify-paper"])?;
    ensure(c1 == 0 && c2 == 0, format!("exit codes {c1} {c2}"))?;
    ensure(first == second, "reports differ")?;
    Ok(format!("{} identical bytes, default and single-thread", first.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("table parity", table_parity),
        ("prime family", || from_battery(battery::prime_family)),
        ("presets l8 l9", || from_battery(battery::small_presets)),
        ("non-existence", non_existence),
        ("sieve narrative", sieve),
        ("codimension-4 witness", codimension_four),
        ("classification sweep", || from_battery(battery::classification_sweep)),
        ("scaling", || from_battery(battery::scaling)),
        ("oracle equivalence", || from_battery(battery::oracle_equivalence)),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("{}/10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
