use std::fmt::Write as _;

use super::{parse, Formula, LogicProfile};
use crate::error::FormatError;

/// A finite generating set `S` for the theory `T(S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub profile: LogicProfile,
    pub generators: Vec<Formula>,
}

impl Theory {
    pub fn new(profile: LogicProfile, generators: Vec<Formula>) -> Self {
        Theory {
            profile,
            generators,
        }
    }

    pub fn empty(profile: LogicProfile) -> Self {
        Theory::new(profile, Vec::new())
    }

    /// Generator `i`, counting from 1.
    pub fn generator(&self, i: usize) -> Option<&Formula> {
        i.checked_sub(1).and_then(|k| self.generators.get(k))
    }

    pub fn is_well_formed(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.profile_violation(&self.profile).is_none())
    }

    /// The sub-theory made of the generators at `indices` (0-based).
    pub fn subset(&self, indices: &[usize]) -> Theory {
        Theory::new(
            self.profile,
            indices.iter().map(|&i| self.generators[i].clone()).collect(),
        )
    }

    /// Reads the theory file format: optional `profile:` header, `#` comment
    /// lines, one formula per remaining non-blank line. Without a header the
    /// `default_profile` applies.
    pub fn parse_file(text: &str, default_profile: &LogicProfile) -> Result<Theory, FormatError> {
        let mut profile = *default_profile;
        let mut generators = Vec::new();
        let mut seen_formula = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(spec) = line.strip_prefix("profile:") {
                if seen_formula {
                    return Err(FormatError::Malformed {
                        line: line_no,
                        msg: "profile header after formulas".into(),
                    });
                }
                profile = LogicProfile::parse(spec).map_err(|msg| FormatError::Malformed {
                    line: line_no,
                    msg,
                })?;
                continue;
            }
            seen_formula = true;
            let f = parse(line, &profile).map_err(|source| FormatError::Formula {
                line: line_no,
                source,
            })?;
            generators.push(f);
        }
        Ok(Theory::new(profile, generators))
    }

    pub fn to_file(&self) -> String {
        let mut out = format!("profile: {}\n", self.profile);
        for g in &self.generators {
            let _ = writeln!(out, "{g}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_header_comments_and_formulas() {
        let text = "# graded facts\nprofile: base,constants\n\n[1/2] -> p\n# rule\np -> q\n";
        let t = Theory::parse_file(text, &LogicProfile::BASE).unwrap();
        assert!(t.profile.constants);
        assert_eq!(t.generators.len(), 2);
        assert_eq!(t.generator(2).unwrap().to_string(), "p -> q");
        assert!(t.generator(0).is_none());
        let again = Theory::parse_file(&t.to_file(), &LogicProfile::BASE).unwrap();
        assert_eq!(again, t);
    }

    #[test]
    fn reports_line_of_bad_formula() {
        let err = Theory::parse_file("profile: base\np ->\n", &LogicProfile::BASE).unwrap_err();
        assert!(matches!(err, FormatError::Formula { line: 2, .. }));
        let err = Theory::parse_file("[1/2]\n", &LogicProfile::BASE).unwrap_err();
        assert!(matches!(err, FormatError::Formula { line: 1, .. }));
        let err = Theory::parse_file("p\nprofile: base\n", &LogicProfile::BASE).unwrap_err();
        assert!(matches!(err, FormatError::Malformed { line: 2, .. }));
    }
}
