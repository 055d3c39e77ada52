//! Textual chemical reaction equations.
//!
//! Grammar (whitespace ignored, omitted coefficient means 1):
//!
//! ```text
//! reaction := side arrow side
//! side     := term ('+' term)*
//! term     := [uint] identifier
//! arrow    := "<->" | "->" | "<-"
//! ```

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("empty {side} side at offset {offset}")]
    EmptySide { side: &'static str, offset: usize },
    #[error("empty term at offset {offset}")]
    EmptyTerm { offset: usize },
    #[error("zero coefficient at offset {offset}")]
    ZeroCoefficient { offset: usize },
    #[error("coefficient too large at offset {offset}")]
    CoefficientOverflow { offset: usize },
    #[error("species `{species}` repeated on one side at offset {offset}")]
    DuplicateSpecies { species: String, offset: usize },
    #[error("species `{species}` appears on both sides at offset {offset}")]
    SpeciesOnBothSides { species: String, offset: usize },
    #[error("unrecognized token `{found}` at offset {offset}")]
    UnexpectedToken { found: String, offset: usize },
    #[error("missing arrow (expected `<->`, `->` or `<-`) at offset {offset}")]
    MissingArrow { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Empty => 0,
            ParseError::EmptySide { offset, .. }
            | ParseError::EmptyTerm { offset }
            | ParseError::ZeroCoefficient { offset }
            | ParseError::CoefficientOverflow { offset }
            | ParseError::DuplicateSpecies { offset, .. }
            | ParseError::SpeciesOnBothSides { offset, .. }
            | ParseError::UnexpectedToken { offset, .. }
            | ParseError::MissingArrow { offset } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SpeciesTerm {
    pub species: String,
    pub coefficient: u32,
}

impl SpeciesTerm {
    pub fn new(species: impl Into<String>, coefficient: u32) -> Self {
        SpeciesTerm {
            species: species.into(),
            coefficient,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Arrow {
    Forward,
    Backward,
    Equilibrium,
}

impl Arrow {
    pub fn as_str(self) -> &'static str {
        match self {
            Arrow::Forward => "->",
            Arrow::Backward => "<-",
            Arrow::Equilibrium => "<->",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Reaction {
    pub reactants: Vec<SpeciesTerm>,
    pub products: Vec<SpeciesTerm>,
    pub arrow: Arrow,
}

impl Reaction {
    /// Sum of the reactant coefficients.
    pub fn order(&self) -> u32 {
        self.reactants.iter().map(|t| t.coefficient).sum()
    }

    /// Species names, reactants first, in order of appearance.
    pub fn species(&self) -> impl Iterator<Item = &str> {
        self.reactants
            .iter()
            .chain(&self.products)
            .map(|t| t.species.as_str())
    }

    pub fn species_count(&self) -> usize {
        self.reactants.len() + self.products.len()
    }
}

impl fmt::Display for Reaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(terms: &[SpeciesTerm]) -> String {
            terms
                .iter()
                .map(|t| match t.coefficient {
                    1 => t.species.clone(),
                    c => format!("{c}{}", t.species),
                })
                .collect::<Vec<_>>()
                .join(" + ")
        }
        write!(
            f,
            "{} {} {}",
            side(&self.reactants),
            self.arrow.as_str(),
            side(&self.products)
        )
    }
}

pub fn format_reaction(r: &Reaction) -> String {
    r.to_string()
}

pub fn reaction_order(r: &Reaction) -> u32 {
    r.order()
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Uint(u64),
    Ident(String),
    Plus,
    Arrow(Arrow),
    Other(String),
}

fn tokenize(text: &str) -> Vec<(usize, Tok)> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let digits = &text[start..i];
            // overflow is reported by the parser as u64::MAX
            out.push((start, Tok::Uint(digits.parse().unwrap_or(u64::MAX))));
        } else if c.is_ascii_alphabetic() {
            while i < b.len() && b[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if c == b'+' {
            i += 1;
            out.push((start, Tok::Plus));
        } else if text[i..].starts_with("<->") {
            i += 3;
            out.push((start, Tok::Arrow(Arrow::Equilibrium)));
        } else if text[i..].starts_with("->") {
            i += 2;
            out.push((start, Tok::Arrow(Arrow::Forward)));
        } else if text[i..].starts_with("<-") {
            i += 2;
            out.push((start, Tok::Arrow(Arrow::Backward)));
        } else {
            let ch = text[i..].chars().next().unwrap();
            i += ch.len_utf8();
            out.push((start, Tok::Other(ch.to_string())));
        }
    }
    out
}

/// Parse a reaction equation such as `N2 + 3H2 <-> 2NH3`.
pub fn parse_reaction(text: &str) -> Result<Reaction, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let toks = tokenize(text);
    let end = text.len();
    let mut pos = 0;

    let (reactants, next) = parse_side(&toks, &mut pos, "left", end)?;
    let arrow = match next {
        Some((_, Tok::Arrow(a))) => a,
        Some((off, Tok::Other(s))) => return Err(ParseError::UnexpectedToken { found: s, offset: off }),
        Some((off, _)) => return Err(ParseError::MissingArrow { offset: off }),
        None => return Err(ParseError::MissingArrow { offset: end }),
    };
    let (products, next) = parse_side(&toks, &mut pos, "right", end)?;
    if let Some((off, tok)) = next {
        let found = match tok {
            Tok::Arrow(a) => a.as_str().to_string(),
            Tok::Other(s) => s,
            Tok::Ident(s) => s,
            Tok::Uint(n) => n.to_string(),
            Tok::Plus => "+".to_string(),
        };
        return Err(ParseError::UnexpectedToken { found, offset: off });
    }
    // species on both sides
    for (i, t) in products.iter().enumerate() {
        if reactants.iter().any(|r| r.0.species == t.0.species) {
            return Err(ParseError::SpeciesOnBothSides {
                species: t.0.species.clone(),
                offset: products[i].1,
            });
        }
    }
    Ok(Reaction {
        reactants: reactants.into_iter().map(|t| t.0).collect(),
        products: products.into_iter().map(|t| t.0).collect(),
        arrow,
    })
}

type Side = Vec<(SpeciesTerm, usize)>;

/// Parse terms until an arrow, junk, or end; return the stopping token.
fn parse_side(
    toks: &[(usize, Tok)],
    pos: &mut usize,
    side: &'static str,
    end: usize,
) -> Result<(Side, Option<(usize, Tok)>), ParseError> {
    let side_start = toks.get(*pos).map_or(end, |t| t.0);
    let mut terms: Side = Vec::new();
    loop {
        let here = toks.get(*pos).map_or(end, |t| t.0);
        // one term
        let mut coeff: Option<(u64, usize)> = None;
        if let Some((off, Tok::Uint(n))) = toks.get(*pos) {
            coeff = Some((*n, *off));
            *pos += 1;
        }
        match toks.get(*pos) {
            Some((off, Tok::Ident(name))) => {
                let coefficient = match coeff {
                    None => 1,
                    Some((0, o)) => return Err(ParseError::ZeroCoefficient { offset: o }),
                    Some((n, o)) => u32::try_from(n).map_err(|_| ParseError::CoefficientOverflow { offset: o })?,
                };
                if terms.iter().any(|t| t.0.species == *name) {
                    return Err(ParseError::DuplicateSpecies {
                        species: name.clone(),
                        offset: *off,
                    });
                }
                terms.push((SpeciesTerm::new(name.clone(), coefficient), *off));
                *pos += 1;
            }
            other => {
                if coeff.is_some() {
                    let off = other.map_or(end, |t| t.0);
                    return Err(ParseError::EmptyTerm { offset: off });
                }
                if terms.is_empty() && !matches!(other, Some((_, Tok::Plus))) {
                    return Err(ParseError::EmptySide {
                        side,
                        offset: side_start,
                    });
                }
                if let Some((off, Tok::Other(s))) = other {
                    return Err(ParseError::UnexpectedToken {
                        found: s.clone(),
                        offset: *off,
                    });
                }
                return Err(ParseError::EmptyTerm { offset: here });
            }
        }
        match toks.get(*pos) {
            Some((_, Tok::Plus)) => {
                *pos += 1;
            }
            Some(t) => {
                let t = t.clone();
                *pos += 1;
                return Ok((terms, Some(t)));
            }
            None => return Ok((terms, None)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str, c: u32) -> SpeciesTerm {
        SpeciesTerm::new(s, c)
    }

    #[test]
    fn parses_reference_reactions() {
        let r = parse_reaction("A <-> B").unwrap();
        assert_eq!(r.reactants, vec![t("A", 1)]);
        assert_eq!(r.products, vec![t("B", 1)]);
        assert_eq!(r.arrow, Arrow::Equilibrium);

        let r = parse_reaction("N2 + 3H2 <-> 2NH3").unwrap();
        assert_eq!(r.reactants, vec![t("N2", 1), t("H2", 3)]);
        assert_eq!(r.products, vec![t("NH3", 2)]);

        let r = parse_reaction("2A <-> 3B").unwrap();
        assert_eq!(r.reactants, vec![t("A", 2)]);
        assert_eq!(r.products, vec![t("B", 3)]);

        assert_eq!(parse_reaction("I2 + Br2 -> 2IBr").unwrap().arrow, Arrow::Forward);
        assert_eq!(parse_reaction("A<-B").unwrap().arrow, Arrow::Backward);
        assert_eq!(parse_reaction("  2 A+B<->C ").unwrap().reactants, vec![t("A", 2), t("B", 1)]);
    }

    #[test]
    fn error_offsets() {
        assert_eq!(
            parse_reaction("A + <-> B").unwrap_err(),
            ParseError::EmptyTerm { offset: 4 }
        );
        assert_eq!(
            parse_reaction("<-> B").unwrap_err(),
            ParseError::EmptySide { side: "left", offset: 0 }
        );
        assert_eq!(
            parse_reaction("A <->").unwrap_err(),
            ParseError::EmptySide { side: "right", offset: 5 }
        );
        assert_eq!(
            parse_reaction("0A <-> B").unwrap_err(),
            ParseError::ZeroCoefficient { offset: 0 }
        );
        assert_eq!(
            parse_reaction("A + A <-> B").unwrap_err(),
            ParseError::DuplicateSpecies { species: "A".into(), offset: 4 }
        );
        assert_eq!(
            parse_reaction("A <-> A + B").unwrap_err(),
            ParseError::SpeciesOnBothSides { species: "A".into(), offset: 6 }
        );
        assert_eq!(
            parse_reaction("A + B").unwrap_err(),
            ParseError::MissingArrow { offset: 5 }
        );
        assert_eq!(
            parse_reaction("A = B").unwrap_err(),
            ParseError::UnexpectedToken { found: "=".into(), offset: 2 }
        );
        assert_eq!(
            parse_reaction("A <-> B -> C").unwrap_err(),
            ParseError::UnexpectedToken { found: "->".into(), offset: 8 }
        );
        assert_eq!(parse_reaction("2 <-> B").unwrap_err(), ParseError::EmptyTerm { offset: 2 });
        assert_eq!(parse_reaction("   ").unwrap_err(), ParseError::Empty);
        assert!(matches!(
            parse_reaction("99999999999A <-> B").unwrap_err(),
            ParseError::CoefficientOverflow { offset: 0 }
        ));
    }

    #[test]
    fn case_sensitive_species() {
        let r = parse_reaction("a <-> A").unwrap();
        assert_eq!(r.species().collect::<Vec<_>>(), ["a", "A"]);
    }

    #[test]
    fn formatting() {
        let r = Reaction {
            reactants: vec![t("A", 1), t("B", 1)],
            products: vec![t("C", 2)],
            arrow: Arrow::Equilibrium,
        };
        assert_eq!(format_reaction(&r), "A + B <-> 2C");
        assert_eq!(format_reaction(&parse_reaction("A<->B").unwrap()), "A <-> B");
        assert_eq!(
            format_reaction(&parse_reaction("N2+3H2<->2NH3").unwrap()),
            "N2 + 3H2 <-> 2NH3"
        );
    }

    #[test]
    fn orders() {
        assert_eq!(reaction_order(&parse_reaction("A + B <-> 2C").unwrap()), 2);
        assert_eq!(reaction_order(&parse_reaction("A <-> B").unwrap()), 1);
        assert_eq!(reaction_order(&parse_reaction("N2 + 3H2 <-> 2NH3").unwrap()), 4);
    }
}
