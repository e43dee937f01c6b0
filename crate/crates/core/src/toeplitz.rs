//! Upper-triangular Toeplitz matrices `a₀E + a₁D + … + a_{n-1}D^{n-1}` over an
//! additively idempotent semiring, stored as coefficient vectors.
//!
//! Products keep the left operand's coefficient first in every term
//! (`(AX)_k = Σ a_i x_{k-i}`), which matters when the coefficient semiring is
//! not commutative. No zero element is needed: every coefficient of a product
//! is a non-empty sum.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::chain::ChainEndo;
use crate::error::{Error, Result};
use crate::simplex::SimplexSpec;

/// A semiring with `a + a = a`.
pub trait IdempotentSemiring: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    /// Selector string, e.g. `maxplus:3`.
    fn selector(&self) -> String;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn one(&self) -> Option<Self::Elem>;
    fn zero(&self) -> Option<Self::Elem>;
    /// Finite carrier in ascending order, when enumerable.
    fn carrier(&self) -> Option<Vec<Self::Elem>>;
    fn contains(&self, a: &Self::Elem) -> bool;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, text: &str) -> Result<Self::Elem>;

    /// `ab + ba`.
    fn jordan(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(&self.mul(a, b), &self.mul(b, a))
    }

    /// Natural order `a ≤ b ⇔ a + b = b`.
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.add(a, b) == *b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Boolean;

impl IdempotentSemiring for Boolean {
    type Elem = bool;

    fn selector(&self) -> String {
        "bool".into()
    }
    fn add(&self, a: &bool, b: &bool) -> bool {
        *a || *b
    }
    fn mul(&self, a: &bool, b: &bool) -> bool {
        *a && *b
    }
    fn one(&self) -> Option<bool> {
        Some(true)
    }
    fn zero(&self) -> Option<bool> {
        Some(false)
    }
    fn carrier(&self) -> Option<Vec<bool>> {
        Some(vec![false, true])
    }
    fn contains(&self, _: &bool) -> bool {
        true
    }
    fn format_elem(&self, a: &bool) -> String {
        if *a { "1" } else { "0" }.into()
    }
    fn parse_elem(&self, text: &str) -> Result<bool> {
        match text.trim() {
            "1" | "true" => Ok(true),
            "0" | "false" => Ok(false),
            other => Err(Error::Parse(format!("not a boolean: `{other}`"))),
        }
    }
}

/// Max-plus element: `-inf` or a finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tropical {
    NegInf,
    Finite(u32),
}

/// `({-∞, 0, .., M}, max, +)` with sums saturating at `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxPlus {
    pub bound: u32,
}

impl IdempotentSemiring for MaxPlus {
    type Elem = Tropical;

    fn selector(&self) -> String {
        format!("maxplus:{}", self.bound)
    }
    fn add(&self, a: &Tropical, b: &Tropical) -> Tropical {
        *a.max(b)
    }
    fn mul(&self, a: &Tropical, b: &Tropical) -> Tropical {
        match (a, b) {
            (Tropical::Finite(x), Tropical::Finite(y)) => Tropical::Finite(x.saturating_add(*y).min(self.bound)),
            _ => Tropical::NegInf,
        }
    }
    fn one(&self) -> Option<Tropical> {
        Some(Tropical::Finite(0))
    }
    fn zero(&self) -> Option<Tropical> {
        Some(Tropical::NegInf)
    }
    fn carrier(&self) -> Option<Vec<Tropical>> {
        Some(
            std::iter::once(Tropical::NegInf)
                .chain((0..=self.bound).map(Tropical::Finite))
                .collect(),
        )
    }
    fn contains(&self, a: &Tropical) -> bool {
        match a {
            Tropical::NegInf => true,
            Tropical::Finite(x) => *x <= self.bound,
        }
    }
    fn format_elem(&self, a: &Tropical) -> String {
        match a {
            Tropical::NegInf => "-inf".into(),
            Tropical::Finite(x) => x.to_string(),
        }
    }
    fn parse_elem(&self, text: &str) -> Result<Tropical> {
        let text = text.trim();
        if text == "-inf" {
            return Ok(Tropical::NegInf);
        }
        let value = text
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("not a max-plus element: `{text}`")))?;
        if value > self.bound {
            return Err(Error::Parse(format!("{value} exceeds bound {}", self.bound)));
        }
        Ok(Tropical::Finite(value))
    }
}

/// `Ê_{C_m}`: all endomorphisms of `C_m`, with `(fg)(x) = g(f(x))`. Has a
/// unit (the identity) but no zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndoSemiring {
    pub m: usize,
}

impl IdempotentSemiring for EndoSemiring {
    type Elem = ChainEndo;

    fn selector(&self) -> String {
        format!("endo:{}", self.m)
    }
    fn add(&self, a: &ChainEndo, b: &ChainEndo) -> ChainEndo {
        a.join(b)
    }
    fn mul(&self, a: &ChainEndo, b: &ChainEndo) -> ChainEndo {
        a.then(b)
    }
    fn one(&self) -> Option<ChainEndo> {
        ChainEndo::identity(self.m).ok()
    }
    fn zero(&self) -> Option<ChainEndo> {
        None
    }
    fn carrier(&self) -> Option<Vec<ChainEndo>> {
        SimplexSpec::coordinate(self.m).ok().map(|s| s.enumerate())
    }
    fn contains(&self, a: &ChainEndo) -> bool {
        a.n() == self.m
    }
    fn format_elem(&self, a: &ChainEndo) -> String {
        a.format_rle()
    }
    fn parse_elem(&self, text: &str) -> Result<ChainEndo> {
        ChainEndo::parse_rle(text, self.m)
    }
}

/// Runtime choice of coefficient semiring: `bool`, `maxplus:M` or `endo:m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemiringSelector {
    Bool,
    MaxPlus(u32),
    Endo(usize),
}

/// Callback run with a concrete semiring picked by a [`SemiringSelector`].
pub trait SemiringVisitor {
    type Output;
    fn visit<S: IdempotentSemiring>(self, semiring: S) -> Self::Output;
}

impl SemiringSelector {
    pub fn dispatch<V: SemiringVisitor>(self, visitor: V) -> V::Output {
        match self {
            Self::Bool => visitor.visit(Boolean),
            Self::MaxPlus(bound) => visitor.visit(MaxPlus { bound }),
            Self::Endo(m) => visitor.visit(EndoSemiring { m }),
        }
    }
}

impl FromStr for SemiringSelector {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown semiring selector `{text}`"));
        match text.split_once(':') {
            None if text == "bool" => Ok(Self::Bool),
            Some(("maxplus", m)) => Ok(Self::MaxPlus(m.parse().map_err(|_| bad())?)),
            Some(("endo", m)) => match m.parse() {
                Ok(m) if m >= 1 => Ok(Self::Endo(m)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for SemiringSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Bool => f.write_str("bool"),
            Self::MaxPlus(m) => write!(f, "maxplus:{m}"),
            Self::Endo(m) => write!(f, "endo:{m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToeplitzMatrix<S: IdempotentSemiring> {
    semiring: S,
    coeffs: Vec<S::Elem>,
}

impl<S: IdempotentSemiring> ToeplitzMatrix<S> {
    pub fn new(semiring: S, coeffs: Vec<S::Elem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyChain);
        }
        if let Some(bad) = coeffs.iter().find(|c| !semiring.contains(c)) {
            return Err(Error::Parse(format!(
                "{bad:?} is not an element of {}",
                semiring.selector()
            )));
        }
        Ok(Self { semiring, coeffs })
    }

    /// Parses each coefficient with the semiring's element syntax.
    pub fn parse(semiring: S, coeffs: &[&str]) -> Result<Self> {
        let parsed = coeffs
            .iter()
            .map(|c| semiring.parse_elem(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(semiring, parsed)
    }

    /// `E`, when the semiring has a unit (and a zero, for `n > 1`).
    pub fn identity(semiring: S, n: usize) -> Option<Self> {
        let mut coeffs = vec![semiring.one()?];
        if n > 1 {
            coeffs.resize(n, semiring.zero()?);
        }
        Some(Self { semiring, coeffs })
    }

    pub fn semiring(&self) -> &S {
        &self.semiring
    }

    pub fn coeffs(&self) -> &[S::Elem] {
        &self.coeffs
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.semiring != other.semiring {
            return Err(Error::SemiringMismatch {
                left: self.semiring.selector(),
                right: other.semiring.selector(),
            });
        }
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    /// `(self·other)_k = Σ_{i ≤ k} self_i · other_{k-i}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self∘other = self·other + other·self`.
    pub fn jordan(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.jordan_unchecked(other))
    }

    /// Same product computed coefficientwise: `Σ_i self_i ∘ other_{k-i}`.
    pub fn jordan_by_coefficients(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let s = &self.semiring;
        let coeffs = (0..self.n())
            .map(|k| {
                (1..=k).fold(s.jordan(&self.coeffs[0], &other.coeffs[k]), |acc, i| {
                    s.add(&acc, &s.jordan(&self.coeffs[i], &other.coeffs[k - i]))
                })
            })
            .collect();
        Ok(self.with(coeffs))
    }

    /// `δ_X(A) = X∘A` with `X = self`.
    pub fn delta(&self, a: &Self) -> Result<Self> {
        self.jordan(a)
    }

    /// Pointwise natural order on coefficients.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.leq_unchecked(other))
    }

    fn with(&self, coeffs: Vec<S::Elem>) -> Self {
        Self {
            semiring: self.semiring.clone(),
            coeffs,
        }
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let s = &self.semiring;
        self.with(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| s.add(a, b)).collect())
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let s = &self.semiring;
        let coeffs = (0..self.n())
            .map(|k| {
                (1..=k).fold(s.mul(&self.coeffs[0], &other.coeffs[k]), |acc, i| {
                    s.add(&acc, &s.mul(&self.coeffs[i], &other.coeffs[k - i]))
                })
            })
            .collect();
        self.with(coeffs)
    }

    fn jordan_unchecked(&self, other: &Self) -> Self {
        self.mul_unchecked(other).add_unchecked(&other.mul_unchecked(self))
    }

    fn leq_unchecked(&self, other: &Self) -> bool {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| self.semiring.leq(a, b))
    }

    pub fn format(&self) -> String {
        let cells: Vec<String> = self.coeffs.iter().map(|c| self.semiring.format_elem(c)).collect();
        format!("[{}]", cells.join(", "))
    }
}

impl<S: IdempotentSemiring> Serialize for ToeplitzMatrix<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let mut seq = serializer.serialize_seq(Some(self.n()))?;
        for c in &self.coeffs {
            seq.serialize_element(&self.semiring.format_elem(c))?;
        }
        seq.end()
    }
}

/// Both sides of one Leibniz-type identity for a triple `(X, A, B)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct TripleCheck<S: IdempotentSemiring> {
    pub x: ToeplitzMatrix<S>,
    pub a: ToeplitzMatrix<S>,
    pub b: ToeplitzMatrix<S>,
    pub lhs: ToeplitzMatrix<S>,
    pub rhs: ToeplitzMatrix<S>,
}

impl<S: IdempotentSemiring> TripleCheck<S> {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn triple<S: IdempotentSemiring>(
    x: &ToeplitzMatrix<S>,
    a: &ToeplitzMatrix<S>,
    b: &ToeplitzMatrix<S>,
    lhs: ToeplitzMatrix<S>,
    rhs: ToeplitzMatrix<S>,
) -> TripleCheck<S> {
    TripleCheck {
        x: x.clone(),
        a: a.clone(),
        b: b.clone(),
        lhs,
        rhs,
    }
}

/// `δ_X(A∘B)` against `δ_X(A)∘B + A∘δ_X(B)`.
pub fn jordan_leibniz_check<S: IdempotentSemiring>(
    x: &ToeplitzMatrix<S>,
    a: &ToeplitzMatrix<S>,
    b: &ToeplitzMatrix<S>,
) -> Result<TripleCheck<S>> {
    x.compatible(a)?;
    x.compatible(b)?;
    Ok(jordan_sides(x, a, b))
}

fn jordan_sides<S: IdempotentSemiring>(
    x: &ToeplitzMatrix<S>,
    a: &ToeplitzMatrix<S>,
    b: &ToeplitzMatrix<S>,
) -> TripleCheck<S> {
    let lhs = x.jordan_unchecked(&a.jordan_unchecked(b));
    let rhs = x
        .jordan_unchecked(a)
        .jordan_unchecked(b)
        .add_unchecked(&a.jordan_unchecked(&x.jordan_unchecked(b)));
    triple(x, a, b, lhs, rhs)
}

/// `δ_X(AB)` against `δ_X(A)B + Aδ_X(B)`.
pub fn ordinary_leibniz_check<S: IdempotentSemiring>(
    x: &ToeplitzMatrix<S>,
    a: &ToeplitzMatrix<S>,
    b: &ToeplitzMatrix<S>,
) -> Result<TripleCheck<S>> {
    x.compatible(a)?;
    x.compatible(b)?;
    Ok(ordinary_sides(x, a, b))
}

fn ordinary_sides<S: IdempotentSemiring>(
    x: &ToeplitzMatrix<S>,
    a: &ToeplitzMatrix<S>,
    b: &ToeplitzMatrix<S>,
) -> TripleCheck<S> {
    let lhs = x.jordan_unchecked(&a.mul_unchecked(b));
    let rhs = x
        .jordan_unchecked(a)
        .mul_unchecked(b)
        .add_unchecked(&a.mul_unchecked(&x.jordan_unchecked(b)));
    triple(x, a, b, lhs, rhs)
}

/// Exhaustive scans stop at this many triples; larger spaces are sampled.
pub const EXHAUSTIVE_TRIPLE_LIMIT: u128 = 10_000_000;
pub const SAMPLE_COUNT: usize = 200_000;
pub const SAMPLE_SEED: u64 = 0x5eed_0001;
/// Witnesses kept per scan report (the failure count is always exact).
pub const WITNESS_CAP: usize = 16;

/// All matrices of size `n`, lexicographic in carrier order.
pub fn all_matrices<S: IdempotentSemiring>(semiring: &S, n: usize) -> Result<Vec<ToeplitzMatrix<S>>> {
    let carrier = semiring
        .carrier()
        .ok_or_else(|| Error::NotEnumerable(semiring.selector()))?;
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<S::Elem>| {
                carrier.iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c.clone());
                    next
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|coeffs| ToeplitzMatrix::new(semiring.clone(), coeffs))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ScanMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct ScanReport<S: IdempotentSemiring> {
    pub semiring: String,
    pub n: usize,
    pub mode: ScanMode,
    pub triples_checked: usize,
    pub failures: usize,
    /// `lhs ≤ rhs` held on every triple.
    pub lhs_below_rhs: bool,
    /// First failures in scan order, at most [`WITNESS_CAP`].
    pub witnesses: Vec<TripleCheck<S>>,
}

#[derive(Default)]
struct Tally<S: IdempotentSemiring> {
    checked: usize,
    failures: usize,
    lhs_below_rhs: bool,
    witnesses: Vec<TripleCheck<S>>,
}

impl<S: IdempotentSemiring> Tally<S> {
    fn new() -> Self {
        Self {
            checked: 0,
            failures: 0,
            lhs_below_rhs: true,
            witnesses: Vec::new(),
        }
    }

    fn record(&mut self, check: TripleCheck<S>) {
        self.checked += 1;
        self.lhs_below_rhs &= check.lhs.leq_unchecked(&check.rhs);
        if !check.holds() {
            self.failures += 1;
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(check);
            }
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.checked += other.checked;
        self.failures += other.failures;
        self.lhs_below_rhs &= other.lhs_below_rhs;
        let room = WITNESS_CAP - self.witnesses.len();
        self.witnesses.extend(other.witnesses.into_iter().take(room));
        self
    }
}

type SidesFn<S> = fn(&ToeplitzMatrix<S>, &ToeplitzMatrix<S>, &ToeplitzMatrix<S>) -> TripleCheck<S>;

fn scan<S: IdempotentSemiring>(semiring: &S, n: usize, sides: SidesFn<S>) -> Result<ScanReport<S>> {
    let carrier_len = semiring
        .carrier()
        .ok_or_else(|| Error::NotEnumerable(semiring.selector()))?
        .len() as u128;
    let space = carrier_len.checked_pow(3 * n as u32).unwrap_or(u128::MAX);
    let (mode, tally) = if space <= EXHAUSTIVE_TRIPLE_LIMIT {
        let all = all_matrices(semiring, n)?;
        let tally = all
            .par_iter()
            .map(|x| {
                let mut t = Tally::new();
                for a in &all {
                    for b in &all {
                        t.record(sides(x, a, b));
                    }
                }
                t
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Tally::new(), Tally::merge);
        (ScanMode::Exhaustive, tally)
    } else {
        let carrier = semiring.carrier().expect("checked above");
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        let mut draw = || {
            let coeffs = (0..n).map(|_| carrier[rng.gen_range(0..carrier.len())].clone()).collect();
            ToeplitzMatrix::new(semiring.clone(), coeffs).expect("carrier elements")
        };
        let triples: Vec<_> = (0..SAMPLE_COUNT).map(|_| (draw(), draw(), draw())).collect();
        let tally = triples
            .par_chunks(1024)
            .map(|chunk| {
                let mut t = Tally::new();
                for (x, a, b) in chunk {
                    t.record(sides(x, a, b));
                }
                t
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Tally::new(), Tally::merge);
        (
            ScanMode::Sampled {
                samples: SAMPLE_COUNT,
                seed: SAMPLE_SEED,
            },
            tally,
        )
    };
    Ok(ScanReport {
        semiring: semiring.selector(),
        n,
        mode,
        triples_checked: tally.checked,
        failures: tally.failures,
        lhs_below_rhs: tally.lhs_below_rhs,
        witnesses: tally.witnesses,
    })
}

/// Jordan-Leibniz identity over every triple (or a seeded sample).
pub fn jordan_leibniz_scan<S: IdempotentSemiring>(semiring: &S, n: usize) -> Result<ScanReport<S>> {
    scan(semiring, n, jordan_sides)
}

/// Ordinary Leibniz identity over every triple (or a seeded sample).
pub fn ordinary_leibniz_scan<S: IdempotentSemiring>(semiring: &S, n: usize) -> Result<ScanReport<S>> {
    scan(semiring, n, ordinary_sides)
}

/// First `(X, A, B)` in lexicographic order with `δ_X(AB) ≠ δ_X(A)B + Aδ_X(B)`.
pub fn ordinary_leibniz_witness<S: IdempotentSemiring>(
    semiring: &S,
    n: usize,
) -> Result<Option<TripleCheck<S>>> {
    let all = all_matrices(semiring, n)?;
    Ok(all.par_iter().find_map_first(|x| {
        all.iter().find_map(|a| {
            all.iter()
                .map(|b| ordinary_sides(x, a, b))
                .find(|check| !check.holds())
        })
    }))
}
