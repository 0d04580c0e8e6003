//! The full reproduction battery behind `verify-paper`: ten numbered items,
//! each a pass/fail with a one-line detail. Output never contains timings,
//! so two runs compare byte for byte.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cochain::{coboundary, in_im_coboundary, in_im_coboundary_oracle, OneCochain, ZeroCochain, ORACLE_CAP};
use crate::constructions::{construct_prime_family, lift_witness, preset};
use crate::criterion::GhostWitness;
use crate::families::{all_stable_graphs, GraphFamily};
use crate::graph::{Edge, StableGraph, Vertex};
use crate::reference::{ODOT_TABLE_L12_CSV, ODOT_TABLE_L6_CSV};
use crate::report::{oracle_report, sieve_report};
use crate::residue::{Age, Level};
use crate::search::{classify_level, search_graph, MinimalCodimension, SearchConfig, SearchError};
use crate::sieve::CandidateTriple;
use crate::symmetry::{automorphisms, canonical_decoration};
use crate::table::{OdotTable, TableFormat};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ItemResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatteryReport {
    pub items: Vec<ItemResult>,
    pub passed: usize,
    pub total: usize,
}

impl BatteryReport {
    fn new(items: Vec<ItemResult>) -> Self {
        let passed = items.iter().filter(|i| i.pass).count();
        let total = items.len();
        BatteryReport { items, passed, total }
    }

    pub fn all_pass(&self) -> bool {
        self.passed == self.total
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for i in &self.items {
            writeln!(
                out,
                "{:>2} {:<22} {} {}",
                i.id,
                i.name,
                if i.pass { "PASS" } else { "FAIL" },
                i.detail
            )
            .unwrap();
        }
        writeln!(out, "{}/{} passed", self.passed, self.total).unwrap();
        out
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializes");
        s.push('\n');
        s
    }
}

type Outcome = Result<(bool, String), SearchError>;

fn item(id: u8, name: &'static str, f: impl FnOnce() -> Outcome) -> ItemResult {
    let (pass, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    ItemResult { id, name, pass, detail }
}

fn lv(l: u64) -> Level {
    Level::new(l).expect("battery levels are valid")
}

fn full() -> SearchConfig {
    SearchConfig::default()
}

/// `(M, a)` pairs as raw values.
type Decorations = BTreeSet<(Vec<u64>, Vec<u64>)>;

fn decorations(ws: &[GhostWitness]) -> Decorations {
    ws.iter().map(|w| (w.multiplicity.raw(), w.twist.raw())).collect()
}

/// Hand tables at levels 6 and 12 against the computed ones. Each cell is
/// compared twice: blank-or-filled, then value.
pub fn table_parity() -> Outcome {
    let mut comparisons = 0;
    let mut mismatches = Vec::new();
    for (l, csv) in [(6, ODOT_TABLE_L6_CSV), (12, ODOT_TABLE_L12_CSV)] {
        let reference = OdotTable::parse(csv, TableFormat::Csv).map_err(|e| SearchError::Domain(e.to_string()))?;
        let computed = OdotTable::compute(lv(l));
        for a in 0..l as usize {
            for m in 0..l as usize {
                let (x, y) = (reference.cell(a, m), computed.cell(a, m));
                comparisons += 2;
                if x.is_some() != y.is_some() || x != y {
                    mismatches.push(format!("l={l} a={a} m={m}"));
                }
            }
        }
    }
    Ok((
        mismatches.is_empty() && comparisons == 360,
        format!("{comparisons} comparisons, {} mismatches {}", mismatches.len(), mismatches.join(" ")).trim_end().to_string(),
    ))
}

pub fn prime_family() -> Outcome {
    let theta = StableGraph::theta();
    let maps = automorphisms(&theta, 1000).expect("theta has 12 automorphisms");
    let mut ok = true;
    let mut notes = Vec::new();
    for l in [5u64, 7, 11, 13] {
        let found = search_graph(&theta, lv(l), &full())?;
        let classes: BTreeSet<_> = found
            .iter()
            .map(|w| canonical_decoration(&maps, &w.multiplicity, &w.twist))
            .collect();
        for n in [1u64, 2] {
            let w = construct_prime_family(l, n)?;
            let age_ok = w.age == Age::new(l + 3, 2 * l);
            let seen = classes.contains(&canonical_decoration(&maps, &w.multiplicity, &w.twist));
            ok &= age_ok && seen && w.checks.all();
            notes.push(format!("l={l},n={n}:{}", if age_ok && seen { "ok" } else { "bad" }));
        }
    }
    Ok((ok, notes.join(" ")))
}

pub fn small_presets() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, l, age) in [("l8", 8, Age::new(6, 8)), ("l9", 9, Age::new(6, 9))] {
        let w = preset(name)?.witness;
        let found = decorations(&search_graph(&StableGraph::theta(), lv(l), &full())?);
        let hit = found.contains(&(w.multiplicity.raw(), w.twist.raw()));
        let good = hit && w.age.is_identical(age) && w.checks.all();
        ok &= good;
        notes.push(format!("{name}: age {} {}", w.age, if hit { "found" } else { "missing" }));
    }
    Ok((ok, notes.join(", ")))
}

pub fn non_existence() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    let theta = StableGraph::banana(3);
    for l in [2u64, 3, 4, 6, 12] {
        let n = search_graph(&theta, lv(l), &full())?.len();
        ok &= n == 0;
        notes.push(format!("l={l}:{n}"));
    }
    let graphs = all_stable_graphs(3, 2);
    let mut hits = 0;
    for g in &graphs {
        hits += search_graph(g, lv(12), &full())?.len();
    }
    ok &= hits == 0;
    notes.push(format!("all-stable 3-edge l=12: {hits} over {} graphs", graphs.len()));
    Ok((ok, notes.join(" ")))
}

pub fn sieve_narrative() -> Outcome {
    let r = sieve_report(lv(12));
    let expect: Vec<CandidateTriple> = [[1, 1, 1], [1, 1, 5], [1, 1, 7], [1, 5, 5], [2, 2, 2], [3, 3, 3]]
        .into_iter()
        .map(CandidateTriple::new)
        .collect();
    let odd = CandidateTriple::new([2, 4, 5]);
    let verdict = r
        .entries
        .iter()
        .find(|e| e.triple == odd)
        .map(|e| if e.survives() { "survives" } else { "eliminated" })
        .unwrap_or("absent");
    let ok = r.entries.len() == 41
        && r.missing_from_listed == vec![odd]
        && r.survivors == expect
        && r.listed_survivors.as_ref() == Some(&expect)
        && r.listed_arrangements_admissible == Some(true)
        && r.named_admissible == Some((12, 12))
        && r.admissible_total > 0
        && r.admissible_in_ker == 0
        && verdict != "absent";
    let (hits, total) = r.named_admissible.unwrap_or((0, 0));
    Ok((
        ok,
        format!(
            "{} candidates, {} survivors, named {hits}/{total}, {}/{} admissible M in Ker, {odd} {verdict}",
            r.entries.len(),
            r.survivors.len(),
            r.admissible_in_ker,
            r.admissible_total
        ),
    ))
}

pub fn codimension_four() -> Outcome {
    let w = preset("l12codim4")?.witness;
    let found = decorations(&search_graph(&StableGraph::banana(4), lv(12), &full())?);
    let hit = found.contains(&(w.multiplicity.raw(), w.twist.raw()));
    Ok((
        hit && w.age.is_identical(Age::new(8, 12)) && w.checks.all(),
        format!("age {}, {} witnesses on banana-4, preset {}", w.age, found.len(), if hit { "found" } else { "missing" }),
    ))
}

/// Level and expected minimal edge count on banana graphs with at most four
/// edges; `None` means no witness up to that bound.
pub const CLASSIFICATION_EXPECTED: [(u64, Option<usize>); 14] = [
    (2, None),
    (3, None),
    (4, None),
    (5, Some(3)),
    (6, None),
    (7, Some(3)),
    (8, Some(3)),
    (9, Some(3)),
    (10, Some(3)),
    (11, Some(3)),
    (12, Some(4)),
    (13, Some(3)),
    (14, Some(3)),
    (15, Some(3)),
];

pub fn classification_sweep() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (l, want) in CLASSIFICATION_EXPECTED {
        let c = classify_level(lv(l), 4, &GraphFamily::Banana, &full())?;
        let want = want.map_or(MinimalCodimension::NoneUpToBound, MinimalCodimension::Found);
        ok &= c.minimal == want;
        let got = match c.minimal {
            MinimalCodimension::Found(e) => e.to_string(),
            MinimalCodimension::NoneUpToBound => "none".into(),
            MinimalCodimension::Unresolved => "unresolved".into(),
        };
        notes.push(format!("{l}:{got}"));
    }
    Ok((ok, notes.join(" ")))
}

pub fn scaling() -> Outcome {
    let theta = StableGraph::theta();
    let mut cache = std::collections::BTreeMap::new();
    let mut found_at = |l: u64| -> Result<Decorations, SearchError> {
        if let Some(s) = cache.get(&l) {
            return Ok(Decorations::clone(s));
        }
        let s = decorations(&search_graph(&theta, lv(l), &full())?);
        cache.insert(l, s.clone());
        Ok(s)
    };
    let (mut lifts, mut bad) = (0, 0);
    for l in 2..=8u64 {
        let base = search_graph(&theta, lv(l), &full())?;
        for k in 1..=3u64 {
            if base.is_empty() {
                break;
            }
            let target = found_at(k * l)?;
            for w in &base {
                lifts += 1;
                match lift_witness(w, k) {
                    Ok(x) if x.age == w.age && target.contains(&(x.multiplicity.raw(), x.twist.raw())) => {}
                    _ => bad += 1,
                }
            }
        }
    }
    Ok((bad == 0 && lifts > 0, format!("{lifts} lifts checked, {bad} failures")))
}

/// A random connected stable graph with at most the given sizes. Genus is
/// raised only where stability needs it, plus an occasional extra unit.
pub fn random_stable_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> StableGraph {
    let n = rng.gen_range(1..=max_vertices.min(max_edges + 1));
    let e = rng.gen_range((n - 1).max(1)..=max_edges);
    let mut pairs: Vec<(u32, u32)> = (1..n as u32).map(|v| (rng.gen_range(0..v), v)).collect();
    while pairs.len() < e {
        pairs.push((rng.gen_range(0..n as u32), rng.gen_range(0..n as u32)));
    }
    pairs.shuffle(rng);
    let mut valence = vec![0usize; n];
    let edges: Vec<Edge> = pairs
        .into_iter()
        .enumerate()
        .map(|(i, (x, y))| {
            valence[x as usize] += 1;
            valence[y as usize] += 1;
            let (tail, head) = if rng.gen_bool(0.5) { (x, y) } else { (y, x) };
            Edge { id: i as u32 + 1, tail, head }
        })
        .collect();
    let vertices = (0..n)
        .map(|v| {
            let floor = match valence[v] {
                0 => 2,
                1 | 2 => 1,
                _ => 0,
            };
            Vertex {
                id: v as u32,
                genus: floor + rng.gen_range(0..=1),
            }
        })
        .collect();
    StableGraph::new(vertices, edges).expect("generator builds connected stable graphs")
}

/// Random 1-cochain; half of them are coboundaries so both verdicts occur.
pub fn random_cochain<R: Rng>(rng: &mut R, graph: &StableGraph, level: Level) -> OneCochain {
    let l = level.get() as i64;
    if rng.gen_bool(0.5) {
        let z: Vec<i64> = (0..graph.vertex_count()).map(|_| rng.gen_range(0..l)).collect();
        let z = ZeroCochain::from_values(graph, level, &z).expect("sized to graph");
        coboundary(graph, &z).expect("sized to graph")
    } else {
        let b: Vec<i64> = (0..graph.edge_count()).map(|_| rng.gen_range(0..l)).collect();
        OneCochain::from_values(graph, level, &b).expect("sized to graph")
    }
}

pub fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut agree, mut in_image) = (0, 0);
    for _ in 0..1000 {
        let g = random_stable_graph(&mut rng, 4, 6);
        let level = lv(rng.gen_range(2..=7));
        let b = random_cochain(&mut rng, &g, level);
        let fast = in_im_coboundary(&g, &b).map_err(|e| SearchError::Criterion(e.into()))?;
        let slow = in_im_coboundary_oracle(&g, &b, ORACLE_CAP).map_err(|e| SearchError::Criterion(e.into()))?;
        agree += (fast == slow) as usize;
        in_image += fast as usize;
    }
    let theta = oracle_report(&StableGraph::theta(), lv(12), None).map_err(|e| SearchError::Criterion(e.into()))?;
    let ok = agree == 1000 && theta.exhaustive && theta.checked == 1728 && theta.disagreements.is_empty();
    Ok((
        ok,
        format!(
            "random {agree}/1000 agree ({in_image} in image), theta l=12 {}/{} agree",
            theta.checked as usize - theta.disagreements.len(),
            theta.checked
        ),
    ))
}

fn items_one_to_nine() -> Vec<ItemResult> {
    vec![
        item(1, "table-parity", table_parity),
        item(2, "prime-family", prime_family),
        item(3, "presets-l8-l9", small_presets),
        item(4, "non-existence", non_existence),
        item(5, "sieve", sieve_narrative),
        item(6, "codimension-4", codimension_four),
        item(7, "classification", classification_sweep),
        item(8, "scaling", scaling),
        item(9, "oracle-equivalence", oracle_equivalence),
    ]
}

/// Run every item. Item 10 reruns items 1 to 9 on a single worker thread
/// and compares the two renderings.
pub fn run_battery() -> BatteryReport {
    let mut items = items_one_to_nine();
    let first = BatteryReport::new(items.clone()).text();
    let determinism = item(10, "determinism", || {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .map_err(|e| SearchError::Domain(e.to_string()))?;
        let second = pool.install(|| BatteryReport::new(items_one_to_nine()).text());
        Ok((first == second, format!("single-thread rerun {}", if first == second { "identical" } else { "differs" })))
    });
    items.push(determinism);
    BatteryReport::new(items)
}
