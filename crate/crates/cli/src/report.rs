//! Result records shared by the text and JSON renderers. Field names are
//! frozen; `schema/result.schema.json` and `schema/check.schema.json`
//! describe them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use antiunify::{GenOutcome, Measure, Substitution};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Generalization {
    pub command: String,
    pub relation: String,
    pub goal: String,
    pub atoms: Vec<String>,
    pub pairing: Vec<[usize; 2]>,
    pub theta1: BTreeMap<String, String>,
    pub theta2: BTreeMap<String, String>,
    pub tau_value: usize,
    pub var_count: usize,
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decision: Option<Decision>,
}

/// Answer to a decision problem asked alongside a generalization.
#[derive(Debug, Clone, Serialize)]
pub struct Decision {
    pub question: String,
    pub p: usize,
    pub answer: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_cover: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub relation: String,
    pub holds: bool,
    pub witness: Option<BTreeMap<String, String>>,
}

pub fn bindings(s: &Substitution) -> BTreeMap<String, String> {
    s.iter().map(|(v, t)| (v.to_string(), t.to_string())).collect()
}

impl Generalization {
    pub fn new(command: &str, relation: &str, out: &GenOutcome) -> Self {
        Generalization {
            command: command.into(),
            relation: relation.into(),
            goal: out.goal.to_string(),
            atoms: out.goal.atoms().map(ToString::to_string).collect(),
            pairing: out.pairing.iter().map(|&(i, j)| [i, j]).collect(),
            theta1: bindings(&out.theta1),
            theta2: bindings(&out.theta2),
            tau_value: out.goal.tau_value(),
            var_count: out.goal.vars().len(),
            size: out.len(),
            k: None,
            decision: None,
        }
    }

    pub fn text(&self, quiet: bool) -> String {
        let mut s = format!("{}\n", self.goal);
        if quiet {
            return s;
        }
        let map = |m: &BTreeMap<String, String>| {
            let parts: Vec<String> = m.iter().map(|(v, t)| format!("{v} ↦ {t}")).collect();
            format!("[{}]", parts.join(", "))
        };
        let pairs: Vec<String> = self.pairing.iter().map(|[i, j]| format!("({i}, {j})")).collect();
        let _ = writeln!(s, "relation: {}", self.relation);
        if let Some(k) = &self.k {
            let _ = writeln!(s, "k: {k}");
        }
        let _ = writeln!(s, "size: {}", self.size);
        let _ = writeln!(s, "pairing: {}", pairs.join(" "));
        let _ = writeln!(s, "theta1: {}", map(&self.theta1));
        let _ = writeln!(s, "theta2: {}", map(&self.theta2));
        let _ = writeln!(s, "tau_value: {}", self.tau_value);
        let _ = writeln!(s, "var_count: {}", self.var_count);
        if let Some(d) = &self.decision {
            let _ = writeln!(s, "{} (p = {}): {}", d.question, d.p, if d.answer { "yes" } else { "no" });
            if let Some(c) = d.min_cover {
                let _ = writeln!(s, "min_cover: {c}");
            }
        }
        s
    }
}

impl CheckResult {
    pub fn text(&self, quiet: bool) -> String {
        match (&self.witness, quiet) {
            (None, _) => "no\n".into(),
            (Some(_), true) => "yes\n".into(),
            (Some(w), false) => {
                let parts: Vec<String> = w.iter().map(|(v, t)| format!("{v} ↦ {t}")).collect();
                format!("yes\nwitness: [{}]\n", parts.join(", "))
            }
        }
    }
}
