//! Hilbert proofs and the proof file format.

use std::fmt;
use std::fmt::Write as _;

use super::scheme::Instantiation;
use crate::error::FormatError;
use crate::syntax::{parse, Formula, LogicProfile, Theory};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom {
        scheme: String,
        bindings: Instantiation,
    },
    /// Generator of the theory, counting from 1.
    Hypothesis(usize),
    /// `ModusPonens(i, j)`: step `j` is `step i → this`.
    ModusPonens(usize, usize),
    Lemma {
        name: String,
        bindings: Instantiation,
    },
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tagged = |f: &mut fmt::Formatter<'_>, tag: &str, name: &str, b: &Instantiation| {
            if b.is_empty() {
                write!(f, "{tag}:{name}")
            } else {
                write!(f, "{tag}:{name} {b}")
            }
        };
        match self {
            Justification::Axiom { scheme, bindings } => tagged(f, "axiom", scheme, bindings),
            Justification::Hypothesis(i) => write!(f, "hyp:{i}"),
            Justification::ModusPonens(i, j) => write!(f, "mp:{i},{j}"),
            Justification::Lemma { name, bindings } => tagged(f, "lemma", name, bindings),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofStep {
    pub formula: Formula,
    pub justification: Justification,
    pub comment: Option<String>,
}

/// A sequence of steps over a finite theory. Steps are numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub theory: Theory,
    pub steps: Vec<ProofStep>,
}

impl Proof {
    pub fn new(theory: Theory) -> Self {
        Proof {
            theory,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Step `i`, counting from 1.
    pub fn step(&self, i: usize) -> Option<&ProofStep> {
        i.checked_sub(1).and_then(|k| self.steps.get(k))
    }

    /// Formula of the last step.
    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    /// Names of lemmas cited by the proof, sorted and deduplicated.
    pub fn lemmas_used(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .steps
            .iter()
            .filter_map(|s| match &s.justification {
                Justification::Lemma { name, .. } => Some(name.clone()),
                _ => None,
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Renders the proof file:
    ///
    /// ```text
    /// profile: base
    /// theory: p
    /// theory: p -> q
    /// 1 | p | hyp:1
    /// 2 | p -> q | hyp:2
    /// 3 | q | mp:1,2
    /// ```
    pub fn to_file(&self) -> String {
        let mut out = format!("profile: {}\n", self.theory.profile);
        for g in &self.theory.generators {
            let _ = writeln!(out, "theory: {g}");
        }
        for (i, s) in self.steps.iter().enumerate() {
            let _ = write!(out, "{} | {} | {}", i + 1, s.formula, s.justification);
            if let Some(c) = &s.comment {
                let _ = write!(out, " # {c}");
            }
            out.push('\n');
        }
        out
    }

    /// Reads the proof file format. Blank lines and lines starting with `#`
    /// are skipped; `# …` after a step is kept as its comment. Headers must
    /// precede the steps, and step indices must run 1, 2, 3, …
    pub fn parse_file(text: &str, default_profile: &LogicProfile) -> Result<Proof, FormatError> {
        let mut profile = *default_profile;
        let mut generators = Vec::new();
        let mut steps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let malformed = |msg: String| FormatError::Malformed { line: line_no, msg };
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(spec) = line.strip_prefix("profile:") {
                if !generators.is_empty() || !steps.is_empty() {
                    return Err(malformed("profile header must come first".into()));
                }
                profile = LogicProfile::parse(spec).map_err(malformed)?;
                continue;
            }
            if let Some(g) = line.strip_prefix("theory:") {
                if !steps.is_empty() {
                    return Err(malformed("theory header after steps".into()));
                }
                let f = parse(g.trim(), &profile).map_err(|source| FormatError::Formula {
                    line: line_no,
                    source,
                })?;
                generators.push(f);
                continue;
            }
            let (body, comment) = match line.split_once('#') {
                Some((b, c)) => (b.trim(), Some(c.trim().to_string())),
                None => (line, None),
            };
            let fields: Vec<&str> = body.splitn(3, '|').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(malformed("expected `<index> | <formula> | <justification>`".into()));
            }
            let index: usize = fields[0]
                .parse()
                .map_err(|_| malformed(format!("bad step index `{}`", fields[0])))?;
            if index != steps.len() + 1 {
                return Err(malformed(format!(
                    "step index {index}, expected {}",
                    steps.len() + 1
                )));
            }
            let formula = parse(fields[1], &profile).map_err(|source| FormatError::Formula {
                line: line_no,
                source,
            })?;
            let justification = parse_justification(fields[2], &profile).map_err(malformed)?;
            steps.push(ProofStep {
                formula,
                justification,
                comment: comment.filter(|c| !c.is_empty()),
            });
        }
        Ok(Proof {
            theory: Theory::new(profile, generators),
            steps,
        })
    }
}

fn parse_index(text: &str) -> Result<usize, String> {
    text.trim()
        .parse()
        .map_err(|_| format!("bad step reference `{text}`"))
}

fn parse_justification(text: &str, profile: &LogicProfile) -> Result<Justification, String> {
    let (tag, rest) = text
        .split_once(':')
        .ok_or_else(|| format!("unknown justification `{text}`"))?;
    let rest = rest.trim();
    let named = |rest: &str| -> Result<(String, Instantiation), String> {
        let (name, bindings) = match rest.find('{') {
            Some(k) => (rest[..k].trim(), Instantiation::parse(&rest[k..], profile)?),
            None => (rest, Instantiation::new()),
        };
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(format!("bad name in `{text}`"));
        }
        Ok((name.to_string(), bindings))
    };
    match tag.trim() {
        "hyp" => Ok(Justification::Hypothesis(parse_index(rest)?)),
        "mp" => {
            let (i, j) = rest
                .split_once(',')
                .ok_or_else(|| format!("`mp` needs two references: `{text}`"))?;
            Ok(Justification::ModusPonens(parse_index(i)?, parse_index(j)?))
        }
        "axiom" => {
            let (scheme, bindings) = named(rest)?;
            Ok(Justification::Axiom { scheme, bindings })
        }
        "lemma" => {
            let (name, bindings) = named(rest)?;
            Ok(Justification::Lemma { name, bindings })
        }
        other => Err(format!("unknown justification `{other}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "profile: base\ntheory: p\ntheory: p -> q\n\
        1 | p | hyp:1\n2 | p -> q | hyp:2 # rule\n3 | q | mp:1,2\n\
        4 | q -> (p -> q) | axiom:L1 {alpha=q, beta=p}\n";

    #[test]
    fn file_round_trip() {
        let p = Proof::parse_file(SAMPLE, &LogicProfile::BASE).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.theory.generators.len(), 2);
        assert_eq!(p.step(2).unwrap().comment.as_deref(), Some("rule"));
        assert_eq!(Proof::parse_file(&p.to_file(), &LogicProfile::BASE).unwrap(), p);
    }

    #[test]
    fn malformed_inputs() {
        let bad = [
            "1 | p | hyp:1\n3 | p | hyp:1\n",
            "1 | p -> | hyp:1\n",
            "1 | p | frob:1\n",
            "1 | p\n",
            "1 | p | mp:1\n",
            "1 | p | hyp:1\nprofile: base\n",
            "1 | p | axiom:L1 {alpha=}\n",
        ];
        for text in bad {
            assert!(Proof::parse_file(text, &LogicProfile::BASE).is_err(), "{text}");
        }
    }
}
