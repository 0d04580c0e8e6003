//! Human-readable and JSON renderings of search results, sieve runs and
//! oracle cross-checks. Nothing here depends on timing or thread count.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cochain::{in_im_coboundary, in_im_coboundary_oracle, CochainError, OneCochain, ORACLE_CAP};
use crate::criterion::GhostWitness;
use crate::graph::StableGraph;
use crate::io::WitnessDocument;
use crate::reference::{LEVEL12_LISTED_CANDIDATES, LEVEL12_LISTED_SURVIVORS, LEVEL12_NAMED_MULTIPLICITIES};
use crate::residue::Level;
use crate::search::{ClassificationResult, EdgeOutcome, MinimalCodimension};
use crate::sieve::{enumerate_candidate_triples, sieve_all, CandidateTriple, SieveEntry};

fn tuple(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn witness_text(w: &GhostWitness) -> String {
    let mut out = String::new();
    writeln!(out, "level {}  edges {}  age {}", w.level, w.codimension, w.age).unwrap();
    let odot = w.odot().raw();
    let (m, a) = (w.multiplicity.raw(), w.twist.raw());
    for (i, e) in w.graph.edges().iter().enumerate() {
        writeln!(
            out,
            "  edge {} ({}->{}): M={} a={} a.M={}",
            e.id, e.tail, e.head, m[i], a[i], odot[i]
        )
        .unwrap();
    }
    let support: Vec<String> = w.support.iter().map(u32::to_string).collect();
    writeln!(out, "  support [{}]", support.join(",")).unwrap();
    let c = w.checks;
    writeln!(
        out,
        "  checks compatible={} ker_boundary={} im_coboundary={} junior={}",
        c.compatible, c.ker_boundary, c.im_coboundary, c.junior
    )
    .unwrap();
    if w.has_single_edge_support() {
        writeln!(out, "  note: twist supported on a single edge, may act as a quasireflection").unwrap();
    }
    out
}

pub fn witnesses_text(ws: &[GhostWitness]) -> String {
    let mut out = format!("{} witness(es)\n", ws.len());
    for (i, w) in ws.iter().enumerate() {
        writeln!(out, "[{i}]").unwrap();
        out.push_str(&witness_text(w));
    }
    out
}

pub fn witnesses_json(ws: &[GhostWitness]) -> String {
    let docs: Vec<WitnessDocument> = ws.iter().map(WitnessDocument::from_witness).collect();
    let mut s = serde_json::to_string_pretty(&docs).expect("serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct EntryDoc {
    edges: usize,
    outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    graphs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
struct ClassificationDoc {
    level: u64,
    family: crate::families::FamilyKind,
    support: crate::criterion::SupportPolicy,
    max_edges: usize,
    entries: Vec<EntryDoc>,
    minimal: MinimalCodimension,
}

pub fn classification_json(c: &ClassificationResult) -> String {
    let doc = ClassificationDoc {
        level: c.level.get(),
        family: c.family,
        support: c.support,
        max_edges: c.max_edges,
        entries: c
            .entries
            .iter()
            .map(|e| match &e.outcome {
                EdgeOutcome::None { graphs } => EntryDoc {
                    edges: e.edges,
                    outcome: "none",
                    graphs: Some(*graphs),
                    witness: None,
                    reason: None,
                },
                EdgeOutcome::Witness(w) => EntryDoc {
                    edges: e.edges,
                    outcome: "witness",
                    graphs: None,
                    witness: Some(WitnessDocument::from_witness(w)),
                    reason: None,
                },
                EdgeOutcome::Unresolved { reason } => EntryDoc {
                    edges: e.edges,
                    outcome: "unresolved",
                    graphs: None,
                    witness: None,
                    reason: Some(reason.clone()),
                },
            })
            .collect(),
        minimal: c.minimal,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializes");
    s.push('\n');
    s
}

pub fn minimal_text(m: MinimalCodimension) -> String {
    match m {
        MinimalCodimension::Found(e) => format!("minimal codimension {e}"),
        MinimalCodimension::NoneUpToBound => "none up to bound".into(),
        MinimalCodimension::Unresolved => "unresolved".into(),
    }
}

pub fn classification_text(c: &ClassificationResult) -> String {
    let family = serde_json::to_value(c.family).unwrap();
    let mut out = format!(
        "level {} family {} support {} max-edges {}\n",
        c.level,
        family.as_str().unwrap_or("?"),
        c.support,
        c.max_edges
    );
    for e in &c.entries {
        match &e.outcome {
            EdgeOutcome::None { graphs } => writeln!(out, "  {} edge(s): none ({graphs} graph(s) searched)", e.edges),
            EdgeOutcome::Witness(w) => writeln!(
                out,
                "  {} edge(s): witness M={} a={} age {}",
                e.edges,
                tuple(&w.multiplicity.raw()),
                tuple(&w.twist.raw()),
                w.age
            ),
            EdgeOutcome::Unresolved { reason } => writeln!(out, "  {} edge(s): unresolved ({reason})", e.edges),
        }
        .unwrap();
    }
    writeln!(out, "{}", minimal_text(c.minimal)).unwrap();
    out
}

/// Everything the sieve establishes at one level.
#[derive(Debug, Clone, Serialize)]
pub struct SieveReport {
    pub level: u64,
    pub entries: Vec<SieveEntry>,
    /// Multisets present in the complete enumeration but not in the
    /// hand-enumerated list (level 12 only).
    pub missing_from_listed: Vec<CandidateTriple>,
    pub survivors: Vec<CandidateTriple>,
    /// Survivors restricted to the hand-enumerated multisets (level 12 only).
    pub listed_survivors: Option<Vec<CandidateTriple>>,
    /// Every listed surviving arrangement has an admissible multiplicity.
    pub listed_arrangements_admissible: Option<bool>,
    /// How many of the named multiplicity triples are admissible for every
    /// arrangement of their group, out of how many.
    pub named_admissible: Option<(usize, usize)>,
    pub admissible_total: usize,
    pub admissible_in_ker: usize,
}

pub fn sieve_report(level: Level) -> SieveReport {
    let candidates = enumerate_candidate_triples(level);
    let entries = sieve_all(level, &candidates);
    let survivors: Vec<CandidateTriple> = entries.iter().filter(|e| e.survives()).map(|e| e.triple).collect();
    let admissible: Vec<_> = entries.iter().flat_map(|e| &e.admissible).collect();
    let admissible_total = admissible.len();
    let admissible_in_ker = admissible.iter().filter(|a| a.in_ker_boundary).count();

    let (mut missing, mut listed_survivors, mut arrangements_ok, mut named) = (Vec::new(), None, None, None);
    if level.get() == 12 {
        let listed: BTreeSet<CandidateTriple> = LEVEL12_LISTED_CANDIDATES.iter().map(|&t| CandidateTriple::new(t)).collect();
        missing = candidates.iter().filter(|c| !listed.contains(c)).copied().collect();
        listed_survivors = Some(survivors.iter().filter(|s| listed.contains(s)).copied().collect());
        let admits = |arr: [u64; 3], m: Option<[u64; 3]>| {
            admissible.iter().any(|a| a.arrangement == arr && m.is_none_or(|m| a.m == m))
        };
        arrangements_ok = Some(LEVEL12_LISTED_SURVIVORS.iter().all(|&arr| admits(arr, None)));
        let mut hits = 0;
        let mut total = 0;
        for (group, ms) in LEVEL12_NAMED_MULTIPLICITIES.iter() {
            for &m in ms {
                total += 1;
                if group.iter().all(|&arr| admits(arr, Some(m))) {
                    hits += 1;
                }
            }
        }
        named = Some((hits, total));
    }

    SieveReport {
        level: level.get(),
        entries,
        missing_from_listed: missing,
        survivors,
        listed_survivors,
        listed_arrangements_admissible: arrangements_ok,
        named_admissible: named,
        admissible_total,
        admissible_in_ker,
    }
}

fn set_list(ts: &[CandidateTriple]) -> String {
    let parts: Vec<String> = ts.iter().map(CandidateTriple::to_string).collect();
    parts.join(" ")
}

impl SieveReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "sieve at level {} on the theta graph", self.level).unwrap();
        writeln!(out, "candidate multisets with sum < {}: {}", self.level, self.entries.len()).unwrap();
        if self.level == 12 {
            writeln!(out, "hand-enumerated list: {} multisets", LEVEL12_LISTED_CANDIDATES.len()).unwrap();
            writeln!(out, "absent from the hand-enumerated list: {}", set_list(&self.missing_from_listed)).unwrap();
        }
        for e in &self.entries {
            if !e.survives() {
                writeln!(out, "{} eliminated", e.triple).unwrap();
                continue;
            }
            let arrs: Vec<String> = e.surviving_arrangements().iter().map(|a| tuple(a)).collect();
            writeln!(out, "{} survives via {}", e.triple, arrs.join(" ")).unwrap();
            for a in &e.admissible {
                writeln!(
                    out,
                    "  a={} M={} Ker: {}",
                    tuple(&a.arrangement),
                    tuple(&a.m),
                    if a.in_ker_boundary { "holds" } else { "fails" }
                )
                .unwrap();
            }
        }
        for t in &self.missing_from_listed {
            let e = self.entries.iter().find(|e| e.triple == *t).expect("candidate is sieved");
            writeln!(
                out,
                "verdict for {}: {}",
                t,
                if e.survives() { "survives" } else { "eliminated" }
            )
            .unwrap();
        }
        writeln!(out, "survivors: {}", set_list(&self.survivors)).unwrap();
        if let Some(ls) = &self.listed_survivors {
            writeln!(out, "survivors within the hand-enumerated list: {}", set_list(ls)).unwrap();
        }
        if let Some(ok) = self.listed_arrangements_admissible {
            writeln!(out, "listed surviving arrangements admissible: {}", if ok { "yes" } else { "no" }).unwrap();
        }
        if let Some((hits, total)) = self.named_admissible {
            writeln!(out, "named multiplicity triples admissible: {hits}/{total}").unwrap();
        }
        writeln!(
            out,
            "admissible M in Ker: {} of {}",
            self.admissible_in_ker, self.admissible_total
        )
        .unwrap();
        out
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializes");
        s.push('\n');
        s
    }
}

/// Agreement of the circuit test with the brute-force oracle on one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub level: u64,
    pub vertices: usize,
    pub edges: usize,
    pub exhaustive: bool,
    pub checked: u64,
    pub in_image: u64,
    pub disagreements: Vec<Vec<u64>>,
}

/// Exhaustive over all `l^|E|` cochains when `samples` is `None` and that
/// count is at most [`ORACLE_CAP`]; otherwise `samples` cochains (1000 by
/// default) drawn from a fixed seed.
pub fn oracle_report(graph: &StableGraph, level: Level, samples: Option<u64>) -> Result<OracleReport, CochainError> {
    let l = level.get();
    let e = graph.edge_count();
    let total = (l as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
    let exhaustive = samples.is_none() && total <= ORACLE_CAP as u128;
    let mut report = OracleReport {
        level: l,
        vertices: graph.vertex_count(),
        edges: e,
        exhaustive,
        checked: 0,
        in_image: 0,
        disagreements: Vec::new(),
    };
    let mut check = |values: &[i64]| -> Result<(), CochainError> {
        let b = OneCochain::from_values(graph, level, values)?;
        let fast = in_im_coboundary(graph, &b)?;
        let slow = in_im_coboundary_oracle(graph, &b, ORACLE_CAP)?;
        report.checked += 1;
        report.in_image += fast as u64;
        if fast != slow {
            report.disagreements.push(b.raw());
        }
        Ok(())
    };
    if exhaustive {
        let mut digits = vec![0i64; e];
        loop {
            check(&digits)?;
            let Some(i) = (0..e).rev().find(|&i| digits[i] + 1 < l as i64) else { break };
            digits[i] += 1;
            digits[i + 1..].iter_mut().for_each(|d| *d = 0);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..samples.unwrap_or(1000) {
            let values: Vec<i64> = (0..e).map(|_| rng.gen_range(0..l as i64)).collect();
            check(&values)?;
        }
    }
    Ok(report)
}

impl OracleReport {
    pub fn text(&self) -> String {
        let mut out = format!(
            "oracle cross-check at level {} on {} vertices, {} edges\n",
            self.level, self.vertices, self.edges
        );
        writeln!(
            out,
            "mode {}: {} cochains checked, {} in the image",
            if self.exhaustive { "exhaustive" } else { "sampled" },
            self.checked,
            self.in_image
        )
        .unwrap();
        for d in &self.disagreements {
            writeln!(out, "disagreement on {}", tuple(d)).unwrap();
        }
        writeln!(out, "disagreements: {}", self.disagreements.len()).unwrap();
        out
    }
}
