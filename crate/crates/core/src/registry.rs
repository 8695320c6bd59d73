//! Catalogue of every inequality and identity, keyed by stable ids.
//!
//! Statements are stored as `sum c_i K_i >= 0` (or `== 0` for identities).
//! Ids are frozen in `registry_ids.txt`; new statements get new ids.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernels::{Combination, DivKernel, KernelKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Pointwise in `(a, b)`.
    Kernel,
    /// Summed over the coordinates of two distributions.
    Distribution,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Claim {
    Nonneg(Combination),
    Identity(Combination),
}

impl Claim {
    pub fn combination(&self) -> &Combination {
        match self {
            Claim::Nonneg(c) | Claim::Identity(c) => c,
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Claim::Identity(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    pub id: String,
    pub claim: Claim,
    pub level: Level,
    pub source: String,
}

impl Statement {
    pub fn combination(&self) -> &Combination {
        self.claim.combination()
    }

    /// True if every kernel is a mean (so the statement has a radical expansion).
    pub fn is_mean_only(&self) -> bool {
        self.combination().is_mean_only()
    }
}

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid registry json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("statement {id}: {message}")]
    Invalid { id: String, message: String },
    #[error("linear form `{text}`: {message}")]
    Form { text: String, message: String },
}

// ---------------------------------------------------------------------------
// Linear-form literals used to transcribe the catalogue.
//
//   expr   := term (('+' | '-') term)*
//   term   := [number ['/' number]] factor ['/' number]
//   factor := NAME | 'D(' NAME ',' NAME ')' | '(' expr ')'

struct FormParser<'a> {
    src: &'a str,
    pos: usize,
}

fn kernel_by_name(name: &str) -> Option<KernelKind> {
    if name == "h" {
        return Some(DivKernel::Hellinger.into());
    }
    name.parse::<KernelKind>().ok()
}

impl<'a> FormParser<'a> {
    fn fail<T>(&self, message: &str) -> Result<T, RegistryError> {
        Err(RegistryError::Form {
            text: self.src.to_string(),
            message: format!("{message} at byte {}", self.pos),
        })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let digits: String = self.src[self.pos..].chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return None;
        }
        self.pos += digits.len();
        digits.parse().ok()
    }

    fn name(&mut self) -> Result<String, RegistryError> {
        self.skip_ws();
        let name: String = self.src[self.pos..]
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric())
            .collect();
        if name.is_empty() {
            return self.fail("expected a kernel name");
        }
        self.pos += name.len();
        Ok(name)
    }

    fn kernel(&mut self) -> Result<KernelKind, RegistryError> {
        let name = self.name()?;
        match kernel_by_name(&name) {
            Some(k) => Ok(k),
            None => self.fail(&format!("unknown kernel `{name}`")),
        }
    }

    fn expr(&mut self) -> Result<Combination, RegistryError> {
        let mut acc = if self.eat('-') {
            self.term()?.scaled(&-BigRational::one())
        } else {
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.plus(&self.term()?);
            } else if self.eat('-') {
                acc = acc.minus(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Combination, RegistryError> {
        let mut coeff = BigRational::one();
        if let Some(n) = self.number() {
            coeff = BigRational::from_integer(n);
            if self.eat('/') {
                match self.number() {
                    Some(d) => coeff /= BigRational::from_integer(d),
                    None => return self.fail("expected a denominator"),
                }
            }
        }
        let body = self.factor()?;
        if self.eat('/') {
            match self.number() {
                Some(d) => coeff /= BigRational::from_integer(d),
                None => return self.fail("expected a denominator"),
            }
        }
        Ok(body.scaled(&coeff))
    }

    fn factor(&mut self) -> Result<Combination, RegistryError> {
        if self.eat('(') {
            let inner = self.expr()?;
            if !self.eat(')') {
                return self.fail("expected `)`");
            }
            return Ok(inner);
        }
        self.skip_ws();
        if self.src[self.pos..].starts_with("D(") {
            self.pos += 2;
            let t = self.kernel()?;
            if !self.eat(',') {
                return self.fail("expected `,`");
            }
            let p = self.kernel()?;
            if !self.eat(')') {
                return self.fail("expected `)`");
            }
            return Ok(Combination::difference(t, p));
        }
        let k = self.kernel()?;
        Ok(Combination::new().with(BigRational::one(), k))
    }
}

/// Parses a linear form such as `(P6 + 6P4)/7` or `1/4(3D(S,P4) + 21D(G,P4))`.
pub fn linear_form(text: &str) -> Result<Combination, RegistryError> {
    let mut p = FormParser { src: text, pos: 0 };
    let combo = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.fail("unexpected trailing input");
    }
    Ok(combo)
}

fn form(text: &str) -> Combination {
    linear_form(text).unwrap_or_else(|e| panic!("catalogue literal: {e}"))
}

// ---------------------------------------------------------------------------

struct Builder {
    out: Vec<Statement>,
}

impl Builder {
    fn push(&mut self, id: String, level: Level, claim: Claim, source: String) {
        self.out.push(Statement { id, claim, level, source });
    }

    /// `lhs <= rhs`.
    fn le(&mut self, id: impl Into<String>, level: Level, lhs: &str, rhs: &str, source: impl Into<String>) {
        let combo = form(rhs).minus(&form(lhs));
        self.push(id.into(), level, Claim::Nonneg(combo), source.into());
    }

    /// `lhs <= rhs` at kernel level, plus a distribution-level copy with id
    /// suffix `.dist` when divergence kernels are involved.
    fn le_lifted(&mut self, id: String, lhs: &str, rhs: &str, source: String) {
        self.le(id.clone(), Level::Kernel, lhs, rhs, source.clone());
        if !self.out.last().expect("just pushed").is_mean_only() {
            self.le(format!("{id}.dist"), Level::Distribution, lhs, rhs, format!("{source}; summed over distributions"));
        }
    }
}

/// Adjacent pairs of the chain; A branches to P5 and S, which are unrelated.
const CHAIN8: [(&str, &str); 13] = [
    ("P1", "P2"),
    ("P2", "P3"),
    ("P3", "H"),
    ("H", "P4"),
    ("P4", "G"),
    ("G", "N1"),
    ("N1", "N3"),
    ("N3", "N2"),
    ("N2", "A"),
    ("A", "P5"),
    ("A", "S"),
    ("P5", "P6"),
    ("S", "P6"),
];

const GROUP1: [(&str, &str); 22] = [
    ("P2", "(P6 + 3P1)/4"),
    ("(2S + H)/3", "A"),
    ("(P6 + 14N1)/15", "N3"),
    ("(P6 + 2P4)/3", "N3"),
    ("S", "(5P6 + 2P4)/7"),
    ("(P6 + 3G)/4", "N2"),
    ("(P6 + 5G)/6", "N1"),
    ("G", "(P6 + 6P4)/7"),
    ("(2N2 + G)/3", "N1"),
    ("N2", "(3A + G)/4"),
    ("N1", "(P5 + 2G)/3"),
    ("N3", "(P5 + 5N1)/6"),
    ("N2", "(P5 + 9N3)/10"),
    ("A", "(P5 + 2N2)/3"),
    ("(S + 4N2)/5", "A"),
    ("(S + 3N3)/4", "A"),
    ("(S + 5N1)/6", "N2"),
    ("(S + 8N1)/9", "N3"),
    ("(S + 3G)/4", "N1"),
    ("P2", "(9P1 + 4P5)/13"),
    ("P3", "(2P5 + 7P2)/9"),
    ("S", "(5P6 + 4N2)/9"),
];

const GROUP2: [(&str, &str); 17] = [
    ("6A + P6", "6S + P2"),
    ("9A + 8N2", "9H + 8P6"),
    ("7A + 6N3", "7H + 6P6"),
    ("5A + 4P4", "5H + 4S"),
    ("S + N1", "P4 + P6"),
    ("6H + 5P6", "6P5 + 5G"),
    ("2P4 + P6", "2A + G"),
    ("10N1 + P5", "10N2 + H"),
    ("A + 6N1", "P4 + 6N2"),
    ("G + 6A", "P5 + 6N2"),
    ("G + 2S", "P6 + 2N1"),
    ("4H + 5S", "4P5 + 5G"),
    ("16P2 + 9P6", "16P5 + 9P1"),
    ("13P2 + 12P5", "13P6 + 12P1"),
    ("12P3 + 7P6", "12P5 + 7P2"),
    ("14N2 + 9P5", "14P6 + 9P3"),
    ("P6 + G", "A + S"),
];

/// The `thm21.pNN` proof parts as `lhs <= rhs`. `p27` and `p28` follow what
/// the proofs establish; their printed headings differ (see `misprint`).
const PARTS: [(&str, &str); 42] = [
    ("(P6 + 6P4)/7", "(S + 3G)/4"),
    ("(S + 3G)/4", "(2N2 + G)/3"),
    ("(P6 + 5G)/6", "(2N2 + G)/3"),
    ("(10N2 + H - P5)/10", "P4 + P6 - S"),
    ("(P4 + 6N2 - A)/6", "P4 + P6 - S"),
    ("(10N2 + H - P5)/10", "(P5 + 2G)/3"),
    ("(P4 + 6N2 - A)/6", "(P5 + 2G)/3"),
    ("P4 + P6 - S", "(P6 + 2P4)/3"),
    ("P4 + P6 - S", "(P6 + 14N1)/15"),
    ("P4 + P6 - S", "(S + 8N1)/9"),
    ("(P5 + 2G)/3", "(P6 + 2P4)/3"),
    ("(3A + G)/4", "(P5 + 9N3)/10"),
    ("(P5 + 9N3)/10", "(S + 4N2)/5"),
    ("(P5 + 9N3)/10", "(S + 3N3)/4"),
    ("(P5 + 9N3)/10", "(2S + H)/3"),
    ("(P5 + 9N3)/10", "(8P6 + 9H - 9A)/8"),
    ("(8P6 + 9H - 9A)/8", "A"),
    ("(14P6 + 9P3 - 9P5)/14", "(5H + 4S - 4P4)/5"),
    ("(14P6 + 9P3 - 9P5)/14", "(P5 + 6N2 - G)/6"),
    ("(P5 + 6N2 - G)/6", "(P5 + 2N2)/3"),
    ("(P5 + 2N2)/3", "(7H + 6P6 - 6N3)/7"),
    ("(5H + 4S - 4P4)/5", "(12P5 + 13P2 - 12P1)/13"),
    ("(5H + 4S - 4P4)/5", "(4H + 5S - 5G)/4"),
    ("(7H + 6P6 - 6N3)/7", "(12P5 + 13P2 - 12P1)/13"),
    ("(7H + 6P6 - 6N3)/7", "(4H + 5S - 5G)/4"),
    ("(7H + 6P6 - 6N3)/7", "S"),
    ("(P6 + 2N1 - G)/2", "(2P5 + 5P6)/7"),
    ("(4N2 + 5P6)/9", "(P6 + 2N1 - G)/2"),
    ("A + S - G", "(12P5 + 7P2 - 12P3)/7"),
    ("(6P5 + 5G - 6H)/5", "(12P5 + 7P2 - 12P3)/7"),
    ("2A + G - 2P4", "(12P5 + 7P2 - 12P3)/7"),
    ("A + S - G", "6S + P2 - 6A"),
    ("(6P5 + 5G - 6H)/5", "6S + P2 - 6A"),
    ("2A + G - 2P4", "6S + P2 - 6A"),
    ("6S + P2 - 6A", "(16P5 + 9P1 - 16P2)/9"),
    ("(12P5 + 7P2 - 12P3)/7", "(16P5 + 9P1 - 16P2)/9"),
    ("(P6 + 3P1)/4", "N1"),
    ("N1", "(P6 + 3G)/4"),
    ("(P6 + 3G)/4", "(S + 5N1)/6"),
    ("(4P5 + 9P1)/13", "N3"),
    ("(P5 + 5N1)/6", "A"),
    ("(2P5 + 7P2)/9", "N1"),
];

/// The `r21.NN` items in difference form, as `lhs <= rhs`. Items printed
/// with `>=` are stored with the sides swapped.
const REMARK21: [(&str, &str); 42] = [
    ("D(P6,S)", "1/4(3D(S,P4) + 21D(G,P4))"),
    ("D(S,N2)", "5/3D(N2,G)"),
    ("D(P6,N2)", "3D(N2,G)"),
    ("D(N2,P4)", "1/10(10D(P6,S) + D(P5,H))"),
    ("D(N2,P4)", "1/5(6D(P6,S) + D(A,N2))"),
    ("D(N2,G)", "1/20(10D(P5,N2) + 3D(P5,H))"),
    ("D(N2,G)", "1/4(2D(P5,N2) + D(A,P4))"),
    ("D(P6,S)", "1/2D(S,P4)"),
    ("D(P6,N1)", "15/14D(S,P4)"),
    ("D(P6,S)", "1/9(D(S,P4) + 8D(N1,P4))"),
    ("D(G,P4)", "1/2D(P6,P5)"),
    ("D(A,N3)", "1/13(2D(P5,A) + 5D(N3,G))"),
    ("D(P5,N2)", "2D(S,N3) + 7D(N2,N3)"),
    ("D(P5,N3)", "5/2D(S,N3)"),
    ("1/20(7D(N3,H) + 3D(P5,H))", "D(S,N3)"),
    ("D(A,H)", "1/45(36D(P6,N3) + 4D(P6,P5))"),
    ("D(P6,A)", "9/8D(A,H)"),
    ("D(P6,H)", "1/70(56D(S,P4) + 45D(P5,P3))"),
    ("D(P6,N2)", "1/42(27D(P5,P3) + 7D(P5,G))"),
    ("D(N2,G)", "D(P5,N2)"),
    ("1/18(14D(N2,H) + 7D(P5,H))", "D(P6,N3)"),
    ("1/60(65D(H,P2) + 52D(S,P4))", "D(P5,P1)"),
    ("D(S,P4)", "25/16D(S,G)"),
    ("1/84(91D(H,P2) + 78D(P6,N3))", "D(P5,P1)"),
    ("D(P6,N3)", "35/24D(S,G)"),
    ("D(P6,N3)", "7/6D(S,H)"),
    ("D(N1,G)", "1/7(4D(P5,N1) + 3D(P6,N1))"),
    ("1/9(D(P6,N1) + 8D(N2,N1))", "D(N1,G)"),
    ("7/12(D(A,P2) + D(S,G))", "D(P5,P3)"),
    ("D(G,P2)", "1/35(18D(P5,P3) + 42D(H,P3))"),
    ("1/12(7D(G,P2) + 14D(A,P4))", "D(P5,P3)"),
    ("D(A,G) + D(A,P2)", "5D(S,A)"),
    ("1/30(5D(G,P2) + 6D(P5,H))", "D(S,A)"),
    ("1/6(2D(A,P4) + D(G,P2))", "D(S,A)"),
    ("1/16(9D(P2,P1) + 54D(S,A))", "D(P5,P2)"),
    ("D(P2,P1)", "1/63(4D(P5,P2) + 108D(P3,P2))"),
    ("D(P6,N1)", "3D(N1,P1)"),
    ("D(N1,G)", "1/3D(P6,N1)"),
    ("D(P6,N1)", "1/3(2D(S,G) + 7D(N1,G))"),
    ("D(P5,N3)", "9/4D(N3,P1)"),
    ("D(P5,A)", "5D(A,N1)"),
    ("D(P5,N1)", "7/2D(N1,P2)"),
];

/// Notes attached to items whose printed form differs from what is stored.
fn misprint(id: &str) -> Option<&'static str> {
    Some(match id {
        "thm21.p07" => "heading prints P6 in place of P4; the proof and the lattice use P4",
        "thm21.p15" => "combination line prints 27N without subscript; read as 27N3",
        "thm21.p21" => "heading prints (6P6 + 7H - 6N2 ...); the proof uses (7H + 6P6 - 6N3)/7",
        "thm21.p27" => "heading prints (2P4 + 5P6)/7, which is false; the proof shows (2P5 + 5P6)/7",
        "thm21.p28" => "heading prints the reverse relation, which is false; stored as proved",
        "eq14.46" => "display prints (2P4 + 5P6)/7; stored as proved in part 27",
        "eq14.47" => "display prints the reverse relation; stored as proved in part 28",
        "eq14.56" => "display prints (2P4 + 5P6)/7; stored with (2P5 + 5P6)/7 as in part 27",
        "r21.11" => "references D(P6,P5), consistent with part 11",
        "r21.24" => "printed with <=, which is false; stored with >= as in part 24",
        "g2.05" => "first of two items printed with number 6",
        "g2.06" => "second of two items printed with number 6",
        _ => return None,
    })
}

fn with_note(id: &str, source: String) -> String {
    match misprint(id) {
        Some(note) => format!("{source} [note: {note}]"),
        None => source,
    }
}

/// Nodes of the refinement lattice for the chain `G <= ... <= P6 <= ...`.
mod lattice {
    pub const X1: &str = "(P6 + 6P4)/7";
    pub const X2A: &str = "(P6 + 5G)/6";
    pub const X2B: &str = "(S + 3G)/4";
    pub const X3: &str = "(2N2 + G)/3";
    pub const X5A: &str = "(10N2 + H - P5)/10";
    pub const X5B: &str = "(P4 + 6N2 - A)/6";
    pub const Y1: &str = "(P5 + 2G)/3";
    pub const Y2: &str = "P4 + P6 - S";
    pub const Y3: &str = "(P6 + 2P4)/3";
    pub const Y4: &str = "(P6 + 14N1)/15";
    pub const Y5: &str = "(S + 8N1)/9";
    pub const Q: &str = "(3A + G)/4";
    pub const R: &str = "(P5 + 9N3)/10";
    pub const Z: [&str; 4] = ["(8P6 + 9H - 9A)/8", "(S + 4N2)/5", "(S + 3N3)/4", "(2S + H)/3"];
    pub const W: &str = "(14P6 + 9P3 - 9P5)/14";
    pub const V1: &str = "(5H + 4S - 4P4)/5";
    pub const V2: &str = "(P5 + 6N2 - G)/6";
    pub const V3: &str = "(P5 + 2N2)/3";
    pub const V4: &str = "(7H + 6P6 - 6N3)/7";
    pub const U1: &str = "(4H + 5S - 5G)/4";
    pub const U2: &str = "(P6 + 2N1 - G)/2";
    pub const U3: &str = "(2P5 + 5P6)/7";
    pub const U4: &str = "(4N2 + 5P6)/9";
    pub const U5: &str = "(12P5 + 13P2 - 12P1)/13";
    pub const T: [&str; 3] = ["A + S - G", "(6P5 + 5G - 6H)/5", "2A + G - 2P4"];
    pub const S: [&str; 2] = ["(12P5 + 7P2 - 12P3)/7", "6S + P2 - 6A"];
    pub const LAST: &str = "(16P5 + 9P1 - 16P2)/9";
}

fn lattice_edges() -> Vec<(&'static str, &'static str)> {
    use lattice::*;
    let mut e = vec![(("G"), X1), (X1, X2A), (X1, X2B), (X2A, X3), (X2B, X3), (X3, "N1")];
    e.extend([("N1", X5A), ("N1", X5B)]);
    for x in [X5A, X5B] {
        e.extend([(x, Y1), (x, Y2)]);
    }
    e.extend([(Y1, Y3), (Y2, Y3), (Y2, Y4), (Y2, Y5)]);
    e.extend([(Y3, "N3"), (Y4, "N3"), (Y5, "N3")]);
    e.extend([("N3", "N2"), ("N2", Q), ("N2", W), (Q, R)]);
    for z in Z {
        e.extend([(R, z), (z, "A")]);
    }
    for a in ["A", W] {
        e.extend([(a, V1), (a, V2)]);
    }
    e.extend([(V2, V3), (V3, V4)]);
    for v in [V1, V4] {
        e.extend([(v, U1), (v, "S"), (v, U5)]);
    }
    e.extend([(U1, "P5"), ("S", U2), (U2, U3), (U4, U2)]);
    for u in ["P5", U3, U4, U5] {
        e.push((u, "P6"));
    }
    for t in T {
        e.push(("P6", t));
    }
    for t in T {
        for s in S {
            e.push((t, s));
        }
    }
    for s in S {
        e.push((s, LAST));
    }
    e
}

fn build() -> Vec<Statement> {
    use Level::{Distribution, Kernel};
    let mut b = Builder { out: Vec::new() };

    for (i, (lo, hi)) in CHAIN8.iter().enumerate() {
        b.le(format!("eq8.{:02}", i + 1), Kernel, lo, hi, format!("Eq. (8): {lo} <= {hi}"));
    }

    let chain11 = ["1/8D(P6,P1)", "1/6D(P6,P2)", "D(S,A)", "1/3D(S,H)", "1/2D(A,H)"];
    let mut e11: Vec<(&str, &str)> = chain11.windows(2).map(|w| (w[0], w[1])).collect();
    let (a49, a37, a25) = ("4/9D(P6,N2)", "3/7D(P6,N3)", "2/5D(S,P4)");
    let (b25, b27, c13) = ("2/5D(P6,N1)", "2/7D(P6,P4)", "1/3D(P6,G)");
    let (d25, d23) = ("2/5D(P5,H)", "2/3D(A,P4)");
    e11.extend([("1/2D(A,H)", a49), ("1/2D(A,H)", a37), ("1/2D(A,H)", a25)]);
    e11.extend([(a37, b25), (a37, b27), (a25, b25), (a25, b27)]);
    e11.extend([(a49, c13), (b25, c13), (b27, c13), (c13, d25), (c13, d23)]);
    let tail = [
        "4D(N2,N1)", "4/3D(N2,G)", "D(A,G)", "4D(A,N2)", "2/3D(P5,G)", "D(P5,N1)",
        "6/5D(P5,N3)", "4/3D(P5,N2)", "2D(P5,A)",
    ];
    e11.extend([(d25, tail[0]), (d23, tail[0])]);
    e11.extend(tail.windows(2).map(|w| (w[0], w[1])));
    for (i, (l, r)) in e11.iter().enumerate() {
        b.le(format!("eq11.{:02}", i + 1), Kernel, l, r, format!("Eq. (11): {l} <= {r}"));
    }

    let (s45, s34, s23, sg) = ("4/5D(S,N2)", "3/4D(S,N3)", "2/3D(S,N1)", "1/2D(S,G)");
    let e12 = [
        ("D(S,A)", s45), ("D(S,A)", s34), (s45, s23), (s34, s23),
        (s23, c13), (s23, sg), (c13, d25), (sg, d25),
    ];
    for (i, (l, r)) in e12.iter().enumerate() {
        b.le(format!("eq12.{:02}", i + 1), Kernel, l, r, format!("Eq. (12): {l} <= {r}"));
    }

    let (l1, l2) = (["1/8D(P6,P1)", "2/13D(P5,P1)"], ["1/6D(P6,P2)", "2/9D(P5,P2)"]);
    let mut e13 = Vec::new();
    for x in l1 {
        for y in l2 {
            e13.push((x, y));
        }
    }
    e13.extend([(l2[0], "2/7D(P5,P3)"), (l2[1], "2/7D(P5,P3)")]);
    e13.extend([("2/7D(P5,P3)", a49), (a49, "D(P6,S)"), ("D(P6,S)", "D(A,G)")]);
    for (i, (l, r)) in e13.iter().enumerate() {
        b.le(format!("eq13.{:02}", i + 1), Kernel, l, r, format!("Eq. (13): {l} <= {r}"));
    }

    for (i, (l, r)) in GROUP1.iter().enumerate() {
        let id = format!("g1.{:02}", i + 1);
        let src = format!("Group 1, item {}: {l} <= {r}", i + 1);
        b.le(id, Kernel, l, r, src);
    }
    for (i, (l, r)) in GROUP2.iter().enumerate() {
        let id = format!("g2.{:02}", i + 1);
        let src = with_note(&id, format!("Group 2, item {}: {l} <= {r}", i + 1));
        b.le(id, Kernel, l, r, src);
    }

    for (i, (l, r)) in PARTS.iter().enumerate() {
        let id = format!("thm21.p{:02}", i + 1);
        let src = with_note(&id, format!("Theorem 2.1, proof part {}: {l} <= {r}", i + 1));
        b.le(id, Kernel, l, r, src);
    }
    b.le(
        "thm31.4",
        Kernel,
        "4D(N2,N1)",
        "2/3D(S,P4)",
        "Theorem 3.1, proof part 4: 4D(N2,N1) <= 2/3D(S,P4)",
    );

    for (i, (l, r)) in REMARK21.iter().enumerate() {
        let id = format!("r21.{:02}", i + 1);
        let src = with_note(&id, format!("Remark 2.1, item {}: {l} <= {r}", i + 1));
        b.le(id, Kernel, l, r, src);
    }

    for (i, (l, r)) in lattice_edges().iter().enumerate() {
        let id = format!("eq14.{:02}", i + 1);
        let src = with_note(&id, format!("Eq. (14): {l} <= {r}"));
        b.le(id, Kernel, l, r, src);
    }

    let e15 = [
        ("P2", "(P6 + 3P1)/4"),
        ("(P6 + 3P1)/4", "N1"),
        ("N1", "(P6 + 3G)/4"),
        ("(P6 + 3G)/4", "(S + 5N1)/6"),
        ("(S + 5N1)/6", "N2"),
        ("P2", "(4P5 + 9P1)/13"),
        ("(4P5 + 9P1)/13", "N3"),
        ("N3", "(P5 + 5N1)/6"),
        ("(P5 + 5N1)/6", "A"),
        ("A", "(3I + 2P4)/2"),
        ("(3I + 2P4)/2", "P5"),
        ("P5", "(T + 2A)/2"),
        ("(T + 2A)/2", "(3J + 16G)/16"),
        ("(3I + 2P4)/2", "S"),
        ("P2", "P3"),
        ("P3", "(2P5 + 7P2)/9"),
        ("(2P5 + 7P2)/9", "N1"),
    ];
    for (i, (l, r)) in e15.iter().enumerate() {
        let mut src = format!("Eq. (15): {l} <= {r}");
        if l.contains('I') || r.contains('I') || r.contains('J') || r.contains('T') {
            src.push_str(" [note: divergence terms are defined and proved with Theorem 3.1, Eq. (18)]");
        }
        b.le_lifted(format!("eq15.{:02}", i + 1), l, r, src);
    }

    let e16 = [
        "1/2D(A,H)", "I", "4D(N2,N1)", "4/3D(N2,G)", "D(A,G)", "4D(A,N2)", "J/8", "T",
    ];
    for (i, w) in e16.windows(2).enumerate() {
        b.le(format!("eq16.{}", i + 1), Distribution, w[0], w[1], format!("Eq. (16): {} <= {}", w[0], w[1]));
    }

    b.push(
        "eq17.id".into(),
        Distribution,
        Claim::Identity(form("J - 4I - 4T")),
        "Eq. (17): J = 4(I + T)".into(),
    );

    let e18 = [
        ("N3", "(I + 4N1)/4"),
        ("(I + 4N1)/4", "N2"),
        ("N2", "A"),
        ("A", "(2P4 + 3I)/2"),
        ("(2P4 + 3I)/2", "P5"),
        ("P5", "(T + 2A)/2"),
        ("(T + 2A)/2", "(3J + 16G)/16"),
        ("(2P4 + 3I)/2", "S"),
    ];
    for (i, (l, r)) in e18.iter().enumerate() {
        b.le_lifted(format!("eq18.{}", i + 1), l, r, format!("Eq. (18): {l} <= {r}"));
    }

    let r31 = [
        ("r31.i.1", "4D(N3,N1)", "I", "Remark 3.1 (i)"),
        ("r31.i.2", "I", "2/3D(P5,P4)", "Remark 3.1 (i)"),
        ("r31.ii.1", "2/5D(S,P4)", "I", "Remark 3.1 (ii)"),
        ("r31.ii.2", "I", "2/3D(S,P4)", "Remark 3.1 (ii)"),
        ("r31.iii.1", "2/3h", "I", "Remark 3.1 (iii)"),
        ("r31.iii.2", "I", "h", "Remark 3.1 (iii)"),
        ("r31.iv", "T", "J/4", "Remark 3.1 (iv)"),
    ];
    for (id, l, r, src) in r31 {
        b.le(id, Distribution, l, r, format!("{src}: {l} <= {r}"));
    }

    // power mean against Lehmer mean at sampled orders
    for (i, (r, text)) in [(1.5, "1.5"), (2.0, "2"), (3.0, "3"), (-1.0, "-1"), (0.5, "0.5")]
        .into_iter()
        .enumerate()
    {
        let power = KernelKind::Power { r };
        let lehmer = KernelKind::Lehmer { r };
        let (lo, hi) = if r > 1.0 { (power, lehmer) } else { (lehmer, power) };
        let rel = if r > 1.0 { "B_r <= K_r" } else { "K_r <= B_r" };
        b.push(
            format!("eq4.{:02}", i + 1),
            Kernel,
            Claim::Nonneg(Combination::difference(hi, lo)),
            format!("Eq. (4) sampled at r = {text}: {rel}"),
        );
    }

    let mut out = b.out;
    out.sort_by(|x, y| x.id.cmp(&y.id));
    out
}

/// Every statement, sorted by id.
pub fn all_statements() -> &'static [Statement] {
    static REGISTRY: OnceLock<Vec<Statement>> = OnceLock::new();
    REGISTRY.get_or_init(build)
}

/// Looks up a statement by id.
pub fn get(id: &str) -> Option<&'static Statement> {
    let all = all_statements();
    all.binary_search_by(|s| s.id.as_str().cmp(id)).ok().map(|i| &all[i])
}

/// The frozen id manifest shipped with the crate.
pub const ID_MANIFEST: &str = include_str!("../registry_ids.txt");

/// `g1`/`g2` items not matched by any `thm21`, `eq14` or `eq15` statement.
/// Each one is an `eq11`-`eq13` chain edge, which the proofs take from the
/// groups directly instead of proving.
pub const CITED_GROUP_ITEMS: &[&str] = &[
    "g1.05", "g1.07", "g1.11", "g1.13", "g1.14", "g1.19", "g1.22", "g2.01", "g2.02", "g2.03", "g2.05",
    "g2.13", "g2.15",
];

// ---------------------------------------------------------------------------
// JSON form

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: String,
    pub kernel: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatementRecord {
    pub id: String,
    pub level: Level,
    pub kind: String,
    pub terms: Vec<TermRecord>,
    pub source: String,
}

/// `p/q` with an explicit denominator.
pub fn rational_text(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or `p`; the denominator must be positive.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (text.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() || d.is_negative() {
        return None;
    }
    Some(BigRational::new(n, d))
}

impl From<&Statement> for StatementRecord {
    fn from(s: &Statement) -> Self {
        StatementRecord {
            id: s.id.clone(),
            level: s.level,
            kind: if s.claim.is_identity() { "identity" } else { "nonneg" }.into(),
            terms: s
                .combination()
                .terms
                .iter()
                .map(|t| TermRecord { coeff: rational_text(&t.coeff), kernel: t.kind.to_string() })
                .collect(),
            source: s.source.clone(),
        }
    }
}

impl TryFrom<&StatementRecord> for Statement {
    type Error = RegistryError;

    fn try_from(r: &StatementRecord) -> Result<Self, Self::Error> {
        let invalid = |message: String| RegistryError::Invalid { id: r.id.clone(), message };
        let mut combo = Combination::new();
        for t in &r.terms {
            let coeff = parse_rational(&t.coeff).ok_or_else(|| invalid(format!("bad coefficient `{}`", t.coeff)))?;
            let kind = t
                .kernel
                .parse::<KernelKind>()
                .map_err(|e| invalid(e.to_string()))?;
            combo.terms.push(crate::kernels::Term { coeff, kind });
        }
        let claim = match r.kind.as_str() {
            "nonneg" => Claim::Nonneg(combo),
            "identity" => Claim::Identity(combo),
            other => return Err(invalid(format!("unknown kind `{other}`"))),
        };
        Ok(Statement { id: r.id.clone(), claim, level: r.level, source: r.source.clone() })
    }
}

/// Deterministic JSON text of the statements (sorted by id, newline-terminated).
pub fn to_json(statements: &[Statement]) -> String {
    let mut records: Vec<StatementRecord> = statements.iter().map(StatementRecord::from).collect();
    records.sort_by(|a, b| a.id.cmp(&b.id));
    let mut text = serde_json::to_string_pretty(&records).expect("records serialize");
    text.push('\n');
    text
}

pub fn from_json(text: &str) -> Result<Vec<Statement>, RegistryError> {
    let records: Vec<StatementRecord> = serde_json::from_str(text)?;
    records.iter().map(Statement::try_from).collect()
}

/// Writes the whole registry as JSON.
pub fn export_json(path: &Path) -> Result<(), RegistryError> {
    std::fs::write(path, to_json(all_statements())).map_err(|source| RegistryError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn import_json(path: &Path) -> Result<Vec<Statement>, RegistryError> {
    let text = std::fs::read_to_string(path).map_err(|source| RegistryError::Io {
        path: path.display().to_string(),
        source,
    })?;
    from_json(&text)
}

/// Counts of statements per id prefix (`eq8`, `g1`, ...).
pub fn family_counts() -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for s in all_statements() {
        let fam = s.id.split('.').next().unwrap_or("").to_string();
        *out.entry(fam).or_insert(0) += 1;
    }
    out
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.claim.is_identity() { "== 0" } else { ">= 0" };
        let terms: Vec<String> = self
            .combination()
            .terms
            .iter()
            .map(|t| format!("({})*{}", t.coeff, t.kind))
            .collect();
        write!(f, "{}: {} {rel}", self.id, terms.join(" + "))
    }
}

/// True if `a` is a positive rational multiple of `b`.
pub fn positive_multiple(a: &Combination, b: &Combination) -> bool {
    let key = |c: &Combination| {
        let mut v: Vec<(String, BigRational)> =
            c.terms.iter().map(|t| (t.kind.to_string(), t.coeff.clone())).collect();
        v.sort_by(|x, y| x.0.cmp(&y.0));
        v
    };
    let (ka, kb) = (key(a), key(b));
    if ka.len() != kb.len() || ka.is_empty() {
        return false;
    }
    let ratio = &ka[0].1 / &kb[0].1;
    ratio.is_positive()
        && ka
            .iter()
            .zip(&kb)
            .all(|(x, y)| x.0 == y.0 && x.1 == &y.1 * &ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{frac, int, NamedMean};

    #[test]
    fn linear_forms() {
        let c = linear_form("(P6 + 6P4)/7").unwrap();
        assert_eq!(
            c,
            Combination::new().with(frac(1, 7), NamedMean::P6).with(frac(6, 7), NamedMean::P4)
        );
        let d = linear_form("1/4(3D(S,P4) + 21D(G,P4))").unwrap();
        assert_eq!(
            d,
            Combination::new()
                .with(frac(3, 4), NamedMean::S)
                .with(frac(-24, 4), NamedMean::P4)
                .with(frac(21, 4), NamedMean::G)
        );
        assert_eq!(linear_form("J/8").unwrap(), Combination::new().with(frac(1, 8), DivKernel::J));
        assert!(linear_form("Q7").is_err());
        assert!(linear_form("(A").is_err());
    }

    #[test]
    fn examples() {
        let g217 = get("g2.17").unwrap();
        let expected = Combination::new()
            .with(int(1), NamedMean::A)
            .with(int(1), NamedMean::S)
            .with(int(-1), NamedMean::P6)
            .with(int(-1), NamedMean::G);
        assert!(positive_multiple(g217.combination(), &expected));
        assert_eq!(g217.combination(), &expected);
        let g102 = get("g1.02").unwrap();
        let expected = Combination::new()
            .with(int(1), NamedMean::A)
            .with(frac(-2, 3), NamedMean::S)
            .with(frac(-1, 3), NamedMean::H);
        assert_eq!(g102.combination(), &expected);
    }

    #[test]
    fn family_sizes() {
        let counts = family_counts();
        assert_eq!(counts["eq8"], 13);
        assert_eq!(counts["g1"], 22);
        assert_eq!(counts["g2"], 17);
        assert_eq!(counts["r21"], 42);
        assert_eq!(counts["thm21"], 42);
        assert_eq!(counts["thm31"], 1);
        assert_eq!(counts["eq11"], 26);
        assert_eq!(counts["eq12"], 8);
        assert_eq!(counts["eq13"], 9);
        assert_eq!(counts["eq14"], 62);
        assert_eq!(counts["eq16"], 7);
        assert_eq!(counts["eq17"], 1);
        assert_eq!(counts["r31"], 7);
        let eq15_kernel = all_statements()
            .iter()
            .filter(|s| s.id.starts_with("eq15.") && s.level == Level::Kernel)
            .count();
        assert_eq!(eq15_kernel, 17);
        let eq18_kernel = all_statements()
            .iter()
            .filter(|s| s.id.starts_with("eq18.") && s.level == Level::Kernel)
            .count();
        assert_eq!(eq18_kernel, 8);
    }

    #[test]
    fn ids_are_unique_and_sorted() {
        let ids: Vec<&str> = all_statements().iter().map(|s| s.id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn ids_match_frozen_manifest() {
        let frozen: Vec<&str> = ID_MANIFEST.lines().filter(|l| !l.is_empty()).collect();
        let ids: Vec<&str> = all_statements().iter().map(|s| s.id.as_str()).collect();
        assert_eq!(ids, frozen);
    }

    #[test]
    fn no_relation_between_p5_and_s() {
        for s in all_statements() {
            let kinds: Vec<KernelKind> = s.combination().terms.iter().map(|t| t.kind).collect();
            let only = kinds.len() == 2
                && kinds.contains(&NamedMean::P5.into())
                && kinds.contains(&NamedMean::S.into());
            assert!(!only, "{}", s.id);
        }
    }

    #[test]
    fn every_source_names_a_display() {
        for s in all_statements() {
            let src = &s.source;
            assert!(
                src.starts_with("Eq. (")
                    || src.starts_with("Group ")
                    || src.starts_with("Remark ")
                    || src.starts_with("Theorem "),
                "{}: {src}",
                s.id
            );
        }
    }

    #[test]
    fn remark_items_restate_proof_parts() {
        for i in 1..=42 {
            let r = get(&format!("r21.{i:02}")).unwrap();
            let p = get(&format!("thm21.p{i:02}")).unwrap();
            assert!(positive_multiple(r.combination(), p.combination()), "item {i}");
        }
    }

    #[test]
    fn json_round_trip() {
        let text = to_json(all_statements());
        assert!(text.ends_with("]\n"));
        let back = from_json(&text).unwrap();
        assert_eq!(back, all_statements());
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn rational_text_forms() {
        assert_eq!(rational_text(&frac(-2, 3)), "-2/3");
        assert_eq!(rational_text(&int(3)), "3/1");
        assert_eq!(parse_rational("6/4"), Some(frac(3, 2)));
        assert_eq!(parse_rational("5"), Some(int(5)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
    }
}
