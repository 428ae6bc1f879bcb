//! Aggregated report over all analyses of one presentation.

use std::time::Instant;

use serde_json::{json, Map, Value};

use crate::error::Result;
use crate::presentation::SpecialSystem;
use crate::rewrite::{critical_pairs, is_confluent, is_overlap_free, CriticalPair};
use crate::units::{units_trivial, UnitsReport};
use crate::wp_language::{to_cnf, wp_grammar};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSummary {
    pub alphabet_size: usize,
    pub rule_count: usize,
    pub max_relator_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrammarStats {
    pub productions: usize,
    pub cnf_nonterminals: usize,
    pub cnf_productions: usize,
}

#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub summary: SystemSummary,
    pub overlap_count: usize,
    pub critical_pairs: Vec<CriticalPair>,
    pub overlap_free: bool,
    pub confluent: bool,
    pub units: UnitsReport,
    pub grammar: GrammarStats,
    /// Wall time per phase in milliseconds.
    pub timings: Vec<(&'static str, f64)>,
}

pub fn analyze(sys: &SpecialSystem, limits: &Limits) -> Result<AnalysisReport> {
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |name: &'static str, timings: &mut Vec<(&'static str, f64)>| {
        let now = Instant::now();
        timings.push((name, (now - clock).as_secs_f64() * 1000.0));
        clock = now;
    };

    let pairs = critical_pairs(sys);
    let overlap_free = is_overlap_free(sys);
    lap("overlaps", &mut timings);
    let confluent = is_confluent(sys, limits)?;
    lap("confluence", &mut timings);
    let units = units_trivial(sys, limits)?;
    lap("units", &mut timings);
    let g = wp_grammar(sys);
    let cnf = to_cnf(&g);
    lap("grammar", &mut timings);

    Ok(AnalysisReport {
        summary: SystemSummary {
            alphabet_size: sys.alphabet().len(),
            rule_count: sys.relators().len(),
            max_relator_length: sys.max_relator_len(),
        },
        overlap_count: pairs.len(),
        critical_pairs: pairs,
        overlap_free,
        confluent,
        units,
        grammar: GrammarStats {
            productions: g.productions().len(),
            cnf_nonterminals: cnf.nonterminals().len(),
            cnf_productions: cnf.productions().len(),
        },
        timings,
    })
}

impl AnalysisReport {
    pub fn to_json(&self, sys: &SpecialSystem, include_timings: bool) -> Value {
        let mut v = json!({
            "system": sys.to_json(),
            "summary": {
                "alphabet_size": self.summary.alphabet_size,
                "rule_count": self.summary.rule_count,
                "max_relator_length": self.summary.max_relator_length,
            },
            "overlap_count": self.overlap_count,
            "critical_pairs": self.critical_pairs.iter().map(CriticalPair::to_json).collect::<Vec<_>>(),
            "overlap_free": self.overlap_free,
            "confluent": self.confluent,
            "units": self.units.to_json(),
            "grammar": {
                "productions": self.grammar.productions,
                "cnf_nonterminals": self.grammar.cnf_nonterminals,
                "cnf_productions": self.grammar.cnf_productions,
                "exact": self.confluent,
            },
        });
        if include_timings {
            let t: Map<String, Value> = self
                .timings
                .iter()
                .map(|(k, ms)| (k.to_string(), json!(ms)))
                .collect();
            v["timings_ms"] = Value::Object(t);
        }
        v
    }

    pub fn to_text(&self, sys: &SpecialSystem, include_timings: bool) -> String {
        let mut out = String::new();
        out.push_str(&format!("system: {sys}\n"));
        out.push_str(&format!(
            "alphabet size {}, {} rules, max relator length {}\n",
            self.summary.alphabet_size, self.summary.rule_count, self.summary.max_relator_length
        ));
        out.push_str(&format!("overlaps: {}\n", self.overlap_count));
        for cp in &self.critical_pairs {
            out.push_str(&format!(
                "  {} rules {},{} at {}: {} -> ({}, {})\n",
                cp.source.kind,
                cp.source.left_rule,
                cp.source.right_rule,
                cp.source.offset,
                sys.render(&cp.source.word),
                sys.render(&cp.left_reduct),
                sys.render(&cp.right_reduct),
            ));
        }
        out.push_str(&format!("overlap_free: {}\n", self.overlap_free));
        out.push_str(&format!("confluent: {}\n", self.confluent));
        out.push_str(&self.units.to_text(sys));
        out.push_str(&format!(
            "grammar: {} productions; CNF {} nonterminals, {} productions{}\n",
            self.grammar.productions,
            self.grammar.cnf_nonterminals,
            self.grammar.cnf_productions,
            if self.confluent {
                ""
            } else {
                " (erasable words only: system not confluent)"
            }
        ));
        if include_timings {
            for (k, ms) in &self.timings {
                out.push_str(&format!("time {k}: {ms:.3} ms\n"));
            }
        }
        out
    }
}
