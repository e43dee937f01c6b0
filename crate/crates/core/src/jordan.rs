//! Jordan multiplications `∂_α(β) = αβ + βα` on a simplex and the checks
//! built on them: Leibniz scans, closed-set admissibility and maximality,
//! the type-level multiplication and Jordan tables, Jordan ideals, and
//! commutation of local derivations.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::chain::ChainEndo;
use crate::error::{Error, Result};
use crate::simplex::{all_types, SimplexSpec, TypeVector};

/// The map `β ↦ αβ + βα` on a fixed simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanMap {
    alpha: ChainEndo,
    spec: SimplexSpec,
}

impl JordanMap {
    pub fn new(spec: &SimplexSpec, alpha: ChainEndo) -> Result<Self> {
        spec.require(&alpha)?;
        Ok(Self {
            alpha,
            spec: spec.clone(),
        })
    }

    pub fn alpha(&self) -> &ChainEndo {
        &self.alpha
    }

    pub fn spec(&self) -> &SimplexSpec {
        &self.spec
    }

    pub fn apply(&self, beta: &ChainEndo) -> Result<ChainEndo> {
        self.spec.require(beta)?;
        Ok(self.eval(beta))
    }

    pub(crate) fn eval(&self, beta: &ChainEndo) -> ChainEndo {
        self.alpha.then(beta).join(&beta.then(&self.alpha))
    }

    /// `(∂(βγ), ∂(β)γ + β∂(γ))`.
    pub(crate) fn leibniz_sides(&self, beta: &ChainEndo, gamma: &ChainEndo) -> (ChainEndo, ChainEndo) {
        let lhs = self.eval(&beta.then(gamma));
        let rhs = self.eval(beta).then(gamma).join(&beta.then(&self.eval(gamma)));
        (lhs, rhs)
    }

    fn witness(&self, beta: &ChainEndo, gamma: &ChainEndo) -> Option<LeibnizWitness> {
        let (lhs, rhs) = self.leibniz_sides(beta, gamma);
        (lhs != rhs).then(|| LeibnizWitness {
            beta: beta.clone(),
            gamma: gamma.clone(),
            lhs,
            rhs,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// A pair on which the Leibniz rule fails, with both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeibnizWitness {
    pub beta: ChainEndo,
    pub gamma: ChainEndo,
    /// `∂(βγ)`
    pub lhs: ChainEndo,
    /// `∂(β)γ + β∂(γ)`
    pub rhs: ChainEndo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeibnizReport {
    pub verdict: Verdict,
    pub witnesses: Vec<LeibnizWitness>,
}

impl LeibnizReport {
    fn from_witnesses(witnesses: Vec<LeibnizWitness>) -> Self {
        Self {
            verdict: Verdict::from_pass(witnesses.is_empty()),
            witnesses,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}

pub fn leibniz_check(d: &JordanMap, beta: &ChainEndo, gamma: &ChainEndo) -> Result<LeibnizReport> {
    d.spec.require(beta)?;
    d.spec.require(gamma)?;
    Ok(LeibnizReport::from_witnesses(d.witness(beta, gamma).into_iter().collect()))
}

/// Checks every ordered pair of `domain`; witnesses come out sorted by `(β, γ)`.
pub fn leibniz_scan(d: &JordanMap, domain: &[ChainEndo]) -> Result<LeibnizReport> {
    for f in domain {
        d.spec.require(f)?;
    }
    let sorted = sorted_unique(domain);
    let witnesses = sorted
        .par_iter()
        .flat_map_iter(|beta| sorted.iter().filter_map(|gamma| d.witness(beta, gamma)).collect::<Vec<_>>())
        .collect();
    Ok(LeibnizReport::from_witnesses(witnesses))
}

/// Lexicographically first violating pair, if any.
pub(crate) fn first_violation(d: &JordanMap, sorted: &[ChainEndo]) -> Option<LeibnizWitness> {
    sorted
        .par_iter()
        .find_map_first(|beta| sorted.iter().find_map(|gamma| d.witness(beta, gamma)))
}

fn sorted_unique(items: &[ChainEndo]) -> Vec<ChainEndo> {
    items.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
}

/// A candidate subset of a simplex together with the derivation it should carry.
#[derive(Debug, Clone)]
pub struct AdmissibleSet {
    spec: SimplexSpec,
    members: BTreeSet<ChainEndo>,
    derivation: JordanMap,
}

impl AdmissibleSet {
    pub fn new(derivation: JordanMap, members: impl IntoIterator<Item = ChainEndo>) -> Result<Self> {
        let spec = derivation.spec.clone();
        let members: BTreeSet<ChainEndo> = members.into_iter().collect();
        for f in &members {
            spec.require(f)?;
        }
        Ok(Self {
            spec,
            members,
            derivation,
        })
    }

    pub fn spec(&self) -> &SimplexSpec {
        &self.spec
    }

    pub fn members(&self) -> &BTreeSet<ChainEndo> {
        &self.members
    }

    pub fn derivation(&self) -> &JordanMap {
        &self.derivation
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosureOp {
    Add,
    Mul,
    Derivation,
}

/// An operation result that leaves the set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureFailure {
    pub op: ClosureOp,
    pub left: ChainEndo,
    pub right: Option<ChainEndo>,
    pub result: ChainEndo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub closure_failure: Option<ClosureFailure>,
    pub leibniz: LeibnizReport,
}

pub(crate) fn first_closure_failure(
    d: &JordanMap,
    members: &BTreeSet<ChainEndo>,
) -> Option<ClosureFailure> {
    let binary = |op: ClosureOp, f: fn(&ChainEndo, &ChainEndo) -> ChainEndo| {
        members.iter().find_map(|x| {
            members.iter().find_map(|y| {
                let z = f(x, y);
                (!members.contains(&z)).then(|| ClosureFailure {
                    op,
                    left: x.clone(),
                    right: Some(y.clone()),
                    result: z,
                })
            })
        })
    };
    binary(ClosureOp::Add, ChainEndo::join)
        .or_else(|| binary(ClosureOp::Mul, ChainEndo::then))
        .or_else(|| {
            members.iter().find_map(|x| {
                let z = d.eval(x);
                (!members.contains(&z)).then(|| ClosureFailure {
                    op: ClosureOp::Derivation,
                    left: x.clone(),
                    right: None,
                    result: z,
                })
            })
        })
}

/// Closure under `+`, `·` and the set's derivation, plus the full Leibniz scan.
pub fn is_admissible(s: &AdmissibleSet) -> AdmissibilityReport {
    let closure_failure = first_closure_failure(&s.derivation, &s.members);
    let members: Vec<ChainEndo> = s.members.iter().cloned().collect();
    let leibniz = leibniz_scan(&s.derivation, &members).expect("members validated on construction");
    AdmissibilityReport {
        admissible: closure_failure.is_none() && leibniz.passed(),
        closure_failure,
        leibniz,
    }
}

/// Smallest superset of `seed` closed under `+`, `·` and `d`.
pub fn closure(d: &JordanMap, seed: impl IntoIterator<Item = ChainEndo>) -> BTreeSet<ChainEndo> {
    let mut set: BTreeSet<ChainEndo> = seed.into_iter().collect();
    let mut frontier: Vec<ChainEndo> = set.iter().cloned().collect();
    while !frontier.is_empty() {
        let current: Vec<ChainEndo> = set.iter().cloned().collect();
        let mut fresh = BTreeSet::new();
        for x in &frontier {
            fresh.insert(d.eval(x));
            for y in &current {
                fresh.insert(x.join(y));
                fresh.insert(x.then(y));
                fresh.insert(y.then(x));
            }
        }
        frontier = fresh.into_iter().filter(|f| !set.contains(f)).collect();
        set.extend(frontier.iter().cloned());
    }
    set
}

/// What happens when one excluded element is adjoined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalityEntry {
    pub excluded: ChainEndo,
    pub excluded_type: TypeVector,
    pub closure_size: usize,
    /// First Leibniz violation inside the closure, if any.
    pub violation: Option<LeibnizWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub maximal: bool,
    pub entries: Vec<MaximalityEntry>,
}

/// For every simplex element outside `base`, closes `base ∪ {e}` and looks
/// for a Leibniz violation. Does not require `base` to be admissible.
pub fn maximality_scan(d: &JordanMap, base: &BTreeSet<ChainEndo>) -> MaximalityReport {
    let outside: Vec<ChainEndo> = d
        .spec
        .enumerate()
        .into_iter()
        .filter(|e| !base.contains(e))
        .collect();
    let entries: Vec<MaximalityEntry> = outside
        .par_iter()
        .map(|e| {
            let grown: Vec<ChainEndo> =
                closure(d, base.iter().cloned().chain([e.clone()])).into_iter().collect();
            MaximalityEntry {
                excluded: e.clone(),
                excluded_type: d.spec.type_of(e).expect("enumerated member"),
                closure_size: grown.len(),
                violation: first_violation(d, &grown),
            }
        })
        .collect();
    MaximalityReport {
        maximal: entries.iter().all(|e| e.violation.is_some()),
        entries,
    }
}

/// No admissible strict superset exists: every adjoined element forces a
/// Leibniz violation in the generated closed set.
pub fn is_maximal_admissible(s: &AdmissibleSet) -> Result<MaximalityReport> {
    let report = is_admissible(s);
    if !report.admissible {
        return Err(Error::NotAdmissibleInput(match (&report.closure_failure, report.leibniz.witnesses.first()) {
            (Some(c), _) => format!("{:?} of {} leaves the set ({})", c.op, c.left, c.result),
            (None, Some(w)) => format!("Leibniz fails at ({}, {})", w.beta, w.gamma),
            (None, None) => unreachable!(),
        }));
    }
    Ok(maximality_scan(&s.derivation, &s.members))
}

/// Types `(a_{m₀}, …)` with `m_ℓ > ℓ` and `m₀ ≤ ℓ`.
pub fn constant_level_exclusions(k: usize, level: usize) -> Vec<TypeVector> {
    all_types(k)
        .into_iter()
        .filter(|t| t.entries()[level] > level && t.entries()[0] <= level)
        .collect()
}

/// Triangle derivation types and the two classes their closed set omits.
const TRIANGLE_EXCLUSIONS: [(&str, [&str; 2]); 6] = [
    ("a,b,b", ["a,c,c", "b,c,c"]),
    ("a,a,c", ["a,c,c", "b,c,c"]),
    ("b,b,c", ["a,c,c", "b,c,c"]),
    ("a,a,b", ["a,c,c", "b,c,c"]),
    ("a,c,c", ["a,a,b", "a,a,c"]),
    ("b,c,c", ["a,a,b", "a,a,c"]),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimedSet {
    pub derivation_type: TypeVector,
    pub excluded_types: Vec<TypeVector>,
    pub members: Vec<ChainEndo>,
}

/// The largest closed set asserted for derivations of `derivation_type`.
pub fn claimed_closed_set(spec: &SimplexSpec, derivation_type: &TypeVector) -> Result<ClaimedSet> {
    spec.check_type(derivation_type)?;
    let k = spec.k();
    let excluded_types = if derivation_type.is_identity() {
        Vec::new()
    } else if let Some(level) = derivation_type.as_endo().constant_value() {
        if level == 0 || level == k - 1 {
            Vec::new()
        } else {
            constant_level_exclusions(k, level)
        }
    } else if k == 3 {
        let key = derivation_type.to_type_string();
        let (_, excluded) = TRIANGLE_EXCLUSIONS
            .iter()
            .find(|(t, _)| *t == key)
            .expect("every non-constant, non-identity triangle type is listed");
        excluded.iter().map(|t| t.parse().expect("static type")).collect()
    } else {
        return Err(Error::UnsupportedType(derivation_type.to_type_string(), k));
    };
    let members = spec
        .enumerate()
        .into_iter()
        .filter(|f| !excluded_types.contains(&spec.type_of(f).expect("enumerated member")))
        .collect();
    Ok(ClaimedSet {
        derivation_type: derivation_type.clone(),
        excluded_types,
        members,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Mult,
    Jordan,
}

/// Cayley table over all types of one dimension; rows are the left factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeTable {
    pub kind: TableKind,
    pub types: Vec<TypeVector>,
    pub entries: Vec<Vec<TypeVector>>,
}

impl TypeTable {
    fn build(kind: TableKind, k: usize) -> Self {
        let types = all_types(k);
        let entries = types
            .iter()
            .map(|r| {
                types
                    .iter()
                    .map(|c| match kind {
                        TableKind::Mult => r.mul(c),
                        TableKind::Jordan => r.jordan(c),
                    })
                    .collect::<Result<Vec<_>>>()
                    .expect("types share a dimension")
            })
            .collect();
        Self { kind, types, entries }
    }

    pub fn index_of(&self, t: &TypeVector) -> Option<usize> {
        self.types.binary_search(t).ok()
    }

    pub fn get(&self, row: &TypeVector, col: &TypeVector) -> Option<&TypeVector> {
        Some(&self.entries[self.index_of(row)?][self.index_of(col)?])
    }

    pub fn symbol(&self) -> &'static str {
        match self.kind {
            TableKind::Mult => "·",
            TableKind::Jordan => "∘",
        }
    }

    /// Aligned plain-text grid.
    pub fn to_text_grid(&self) -> String {
        let width = self.types.iter().map(|t| t.to_string().chars().count()).max().unwrap_or(1);
        let mut out = String::new();
        let _ = write!(out, "{:>width$} |", self.symbol());
        for t in &self.types {
            let _ = write!(out, " {:>width$}", t.to_string());
        }
        out.push('\n');
        out.push_str(&"-".repeat(width + 2 + (width + 1) * self.types.len()));
        out.push('\n');
        for (t, row) in self.types.iter().zip(&self.entries) {
            let _ = write!(out, "{:>width$} |", t.to_string());
            for cell in row {
                let _ = write!(out, " {:>width$}", cell.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Array of rows of type strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.entries).expect("type strings serialize")
    }
}

pub fn type_mult_table(k: usize) -> TypeTable {
    TypeTable::build(TableKind::Mult, k)
}

pub fn type_jordan_table(k: usize) -> TypeTable {
    TypeTable::build(TableKind::Jordan, k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanIdealReport {
    pub holds: bool,
    /// `(u, v, u+v)` with the sum outside the set.
    pub additive_witness: Option<(TypeVector, TypeVector, TypeVector)>,
    /// `(u, s, u∘s)` with the product outside the set.
    pub jordan_witness: Option<(TypeVector, TypeVector, TypeVector)>,
}

/// Additive closure plus `u∘s ∈ J` for every `s`, reading `∘` from `table`.
pub fn is_jordan_ideal(j: &BTreeSet<TypeVector>, table: &TypeTable) -> Result<JordanIdealReport> {
    if table.kind != TableKind::Jordan {
        return Err(Error::InvalidType("Jordan-ideal check needs a Jordan table".into()));
    }
    if j.is_empty() {
        return Err(Error::EmptySubset);
    }
    for u in j {
        if table.index_of(u).is_none() {
            return Err(Error::InvalidType(format!("{u} is not a row of the table")));
        }
    }
    let additive_witness = j.iter().find_map(|u| {
        j.iter().find_map(|v| {
            let s = u.add(v).expect("same dimension");
            (!j.contains(&s)).then(|| (u.clone(), v.clone(), s))
        })
    });
    let jordan_witness = j.iter().find_map(|u| {
        table.types.iter().find_map(|s| {
            let p = table.get(u, s).expect("row and column present");
            (!j.contains(p)).then(|| (u.clone(), s.clone(), p.clone()))
        })
    });
    Ok(JordanIdealReport {
        holds: additive_witness.is_none() && jordan_witness.is_none(),
        additive_witness,
        jordan_witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommuteWitness {
    pub gamma: ChainEndo,
    /// `∂₂(∂₁(γ))`
    pub d2_of_d1: ChainEndo,
    /// `∂₁(∂₂(γ))`
    pub d1_of_d2: ChainEndo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommuteReport {
    pub commutes: bool,
    pub checked: usize,
    pub witness: Option<CommuteWitness>,
}

pub fn commute_check(d1: &JordanMap, d2: &JordanMap, domain: &[ChainEndo]) -> Result<CommuteReport> {
    if d1.spec != d2.spec {
        return Err(Error::InvalidSimplex(format!(
            "derivations live on {} and {}",
            d1.spec, d2.spec
        )));
    }
    for g in domain {
        d1.spec.require(g)?;
    }
    let sorted = sorted_unique(domain);
    let witness = sorted.iter().find_map(|g| {
        let d2_of_d1 = d2.eval(&d1.eval(g));
        let d1_of_d2 = d1.eval(&d2.eval(g));
        (d2_of_d1 != d1_of_d2).then(|| CommuteWitness {
            gamma: g.clone(),
            d2_of_d1,
            d1_of_d2,
        })
    });
    Ok(CommuteReport {
        commutes: witness.is_none(),
        checked: sorted.len(),
        witness,
    })
}

/// Types whose same-type pairs satisfy `γα = γβ` for right identities `γ`:
/// every type of a triangle; otherwise the identity, the constants and the
/// idempotent forms.
pub fn lemma_families(k: usize) -> Vec<TypeVector> {
    let types = all_types(k);
    if k == 3 {
        return types;
    }
    types
        .into_iter()
        .filter(|t| t.is_identity() || t.is_constant() || t.is_idempotent_form())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaWitness {
    pub alpha: ChainEndo,
    pub beta: ChainEndo,
    pub gamma: ChainEndo,
    pub gamma_alpha: ChainEndo,
    pub gamma_beta: ChainEndo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub holds: bool,
    pub families: Vec<TypeVector>,
    pub triples_checked: usize,
    pub witness: Option<LemmaWitness>,
}

fn same_type_pairs(spec: &SimplexSpec, families: &[TypeVector]) -> Result<Vec<(ChainEndo, ChainEndo)>> {
    let mut pairs = Vec::new();
    for t in families {
        let class = spec.type_class(t)?;
        for (i, a) in class.iter().enumerate() {
            for b in &class[i..] {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(pairs)
}

/// `γα = γβ` for every same-type pair in the lemma families and every right identity `γ`.
pub fn lemma1_check(spec: &SimplexSpec) -> Result<LemmaReport> {
    let families = lemma_families(spec.k());
    let pairs = same_type_pairs(spec, &families)?;
    let identities = spec.right_identities().members;
    let witness = pairs.iter().find_map(|(a, b)| {
        identities.iter().find_map(|g| {
            let (ga, gb) = (g.then(a), g.then(b));
            (ga != gb).then(|| LemmaWitness {
                alpha: a.clone(),
                beta: b.clone(),
                gamma: g.clone(),
                gamma_alpha: ga,
                gamma_beta: gb,
            })
        })
    });
    Ok(LemmaReport {
        holds: witness.is_none(),
        families,
        triples_checked: pairs.len() * identities.len(),
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCommuteReport {
    pub holds: bool,
    pub families: Vec<TypeVector>,
    pub pairs_checked: usize,
    pub domain_size: usize,
    /// `(α, β, witness)` for the first non-commuting pair.
    pub witness: Option<(ChainEndo, ChainEndo, CommuteWitness)>,
}

/// `∂_α∂_β = ∂_β∂_α` on `domain` for every same-type pair drawn from `families`.
pub fn family_commute_check(
    spec: &SimplexSpec,
    families: &[TypeVector],
    domain: &[ChainEndo],
) -> Result<FamilyCommuteReport> {
    let pairs = same_type_pairs(spec, families)?;
    let results: Vec<Option<(ChainEndo, ChainEndo, CommuteWitness)>> = pairs
        .par_iter()
        .map(|(a, b)| {
            let report = commute_check(
                &JordanMap::new(spec, a.clone())?,
                &JordanMap::new(spec, b.clone())?,
                domain,
            )?;
            Ok(report.witness.map(|w| (a.clone(), b.clone(), w)))
        })
        .collect::<Result<_>>()?;
    let witness = results.into_iter().flatten().next();
    Ok(FamilyCommuteReport {
        holds: witness.is_none(),
        families: families.to_vec(),
        pairs_checked: pairs.len(),
        domain_size: sorted_unique(domain).len(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> SimplexSpec {
        s.parse().unwrap()
    }

    fn rle(s: &str) -> ChainEndo {
        s.parse().unwrap()
    }

    fn ty(s: &str) -> TypeVector {
        s.parse().unwrap()
    }

    fn map(s: &SimplexSpec, alpha: &str) -> JordanMap {
        JordanMap::new(s, rle(alpha)).unwrap()
    }

    #[test]
    fn apply_values() {
        let s = spec("n=7;A=1,3,5");
        assert_eq!(map(&s, "1_5 5_2").apply(&rle("1_5 3_2")).unwrap(), rle("1_5 3_2"));
        assert_eq!(map(&s, "1_4 5_3").apply(&rle("1_4 3_3")).unwrap(), rle("1_4 3_3"));
        assert_eq!(map(&s, "1_4 3 5_2").apply(&rle("1_3 3_3 5")).unwrap(), rle("1_4 3_2 5"));
        let c = map(&s, "5_7");
        for beta in s.enumerate() {
            assert_eq!(c.apply(&beta).unwrap(), rle("5_7"));
        }
        assert!(matches!(
            map(&s, "1_7").apply(&rle("0_7")),
            Err(Error::NotInSimplex { .. })
        ));
        assert!(JordanMap::new(&s, rle("2_7")).is_err());
    }

    #[test]
    fn leibniz_single_pairs() {
        let tri = spec("n=3;A=0,1,2");
        let d = map(&tri, "1_3");
        let beta = ChainEndo::from_values(vec![0, 0, 1]).unwrap();
        let gamma = ChainEndo::from_values(vec![0, 2, 2]).unwrap();
        let report = leibniz_check(&d, &beta, &gamma).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        assert_eq!(report.witnesses[0].lhs, rle("1_3"));
        assert_eq!(report.witnesses[0].rhs, rle("2_3"));

        let s = spec("n=7;A=1,3,5");
        let c = map(&s, "3_7");
        assert!(leibniz_check(&c, &rle("1_7"), &rle("5_7")).unwrap().passed());
    }

    #[test]
    fn leibniz_scans() {
        let s = spec("n=7;A=1,3,5");
        let all = s.enumerate();
        assert!(leibniz_scan(&map(&s, "1_7"), &all).unwrap().passed());
        assert!(leibniz_scan(&map(&s, "1_2 3_2 5_3"), &all).unwrap().passed());
        assert!(leibniz_scan(&map(&s, "1_7"), &[]).unwrap().passed());
        assert!(leibniz_scan(&map(&s, "1_7"), &[rle("5_7")]).unwrap().passed());

        let report = leibniz_scan(&map(&s, "3_7"), &all).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        let bad: Vec<TypeVector> = vec![ty("a,c,c"), ty("b,c,c")];
        for w in &report.witnesses {
            let involved = [s.type_of(&w.beta).unwrap(), s.type_of(&w.gamma).unwrap()];
            assert!(involved.iter().any(|t| bad.contains(t)), "{w:?}");
            assert!(w.lhs.le_pointwise(&w.rhs) || w.rhs.le_pointwise(&w.lhs));
        }
        let keys: Vec<_> = report.witnesses.iter().map(|w| (&w.beta, &w.gamma)).collect();
        assert!(keys.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn claimed_sets() {
        let s = spec("n=7;A=1,3,5");
        let bbb = claimed_closed_set(&s, &ty("b,b,b")).unwrap();
        assert_eq!(bbb.members.len(), 29);
        assert_eq!(bbb.excluded_types, vec![ty("a,c,c"), ty("b,c,c")]);
        let acc = claimed_closed_set(&s, &ty("a,c,c")).unwrap();
        assert_eq!(acc.excluded_types, vec![ty("a,a,b"), ty("a,a,c")]);
        assert_eq!(claimed_closed_set(&s, &ty("a,b,c")).unwrap().members.len(), 36);
        let big = spec("n=8;A=1,3,5,7");
        assert_eq!(claimed_closed_set(&big, &ty("a,b,c,d")).unwrap().members.len(), 165);
        assert!(matches!(
            claimed_closed_set(&big, &ty("a,a,b,b")),
            Err(Error::UnsupportedType(..))
        ));
        assert_eq!(constant_level_exclusions(3, 1), vec![ty("a,c,c"), ty("b,c,c")]);
    }

    #[test]
    fn admissibility() {
        let s = spec("n=7;A=1,3,5");
        let alpha = s.type_class(&ty("b,b,b")).unwrap()[0].clone();
        let d = JordanMap::new(&s, alpha).unwrap();
        let claimed = claimed_closed_set(&s, &ty("b,b,b")).unwrap();
        let set = AdmissibleSet::new(d.clone(), claimed.members.clone()).unwrap();
        assert!(is_admissible(&set).admissible);
        assert!(is_maximal_admissible(&set).unwrap().maximal);

        let whole = AdmissibleSet::new(d.clone(), s.enumerate()).unwrap();
        assert!(!is_admissible(&whole).admissible);
        assert!(matches!(
            is_maximal_admissible(&whole),
            Err(Error::NotAdmissibleInput(_))
        ));

        let c = map(&s, "5_7");
        let single = AdmissibleSet::new(c, [rle("5_7")]).unwrap();
        assert!(is_admissible(&single).admissible);
    }

    #[test]
    fn proper_admissible_subsets_are_not_maximal() {
        let s = spec("n=7;A=1,3,5");
        let d = JordanMap::new(&s, s.type_class(&ty("b,b,b")).unwrap()[0].clone()).unwrap();
        let claimed = claimed_closed_set(&s, &ty("b,b,b")).unwrap().members;

        // removing a single constant breaks multiplicative closure, since f·c̄ = c̄
        let mut without_one = claimed.clone();
        without_one.retain(|f| f != &rle("1_7"));
        let report = is_admissible(&AdmissibleSet::new(d.clone(), without_one).unwrap());
        assert_eq!(report.closure_failure.unwrap().op, ClosureOp::Mul);

        // the constants are admissible and strictly inside the claimed set
        let constants = [rle("1_7"), rle("3_7"), rle("5_7")];
        let set = AdmissibleSet::new(d, constants).unwrap();
        assert!(is_admissible(&set).admissible);
        let report = is_maximal_admissible(&set).unwrap();
        assert!(!report.maximal);
        let escapable: Vec<_> = report.entries.iter().filter(|e| e.violation.is_none()).collect();
        assert!(escapable.iter().all(|e| claimed.contains(&e.excluded)));
    }

    #[test]
    fn closure_reaches_fixpoint() {
        let s = spec("n=3;A=0,1,2");
        let d = map(&s, "1_3");
        let c = closure(&d, [rle("0_1 1_1 2_1")]);
        assert!(first_closure_failure(&d, &c).is_none());
        assert!(c.contains(&rle("1_3")));
    }

    #[test]
    fn type_tables() {
        let mult = type_mult_table(3);
        assert_eq!(mult.types.len(), 10);
        assert_eq!(mult.get(&ty("a,a,b"), &ty("a,a,c")), Some(&ty("a,a,a")));
        assert_eq!(mult.get(&ty("c,c,c"), &ty("a,a,a")), Some(&ty("a,a,a")));
        for t in &mult.types {
            assert_eq!(mult.get(t, &ty("a,b,c")), Some(t));
        }
        let jordan = type_jordan_table(3);
        assert_eq!(jordan.get(&ty("a,c,c"), &ty("b,b,b")), Some(&ty("c,c,c")));
        assert_eq!(jordan.get(&ty("a,a,b"), &ty("a,a,c")), Some(&ty("a,a,b")));
        assert_eq!(jordan.get(&ty("a,a,a"), &ty("a,a,a")), Some(&ty("a,a,a")));
        let grid = jordan.to_text_grid();
        assert_eq!(grid.lines().count(), 12);
        assert!(grid.starts_with("      ∘ |"));
    }

    #[test]
    fn jordan_ideals() {
        let table = type_jordan_table(3);
        let corollary: BTreeSet<_> = ["b,b,b", "b,b,c", "b,c,c", "c,c,c"].iter().map(|t| ty(t)).collect();
        assert!(is_jordan_ideal(&corollary, &table).unwrap().holds);
        let everything: BTreeSet<_> = table.types.iter().cloned().collect();
        assert!(is_jordan_ideal(&everything, &table).unwrap().holds);
        let report = is_jordan_ideal(&[ty("a,a,a")].into(), &table).unwrap();
        assert!(!report.holds);
        assert_eq!(report.jordan_witness.unwrap().2, ty("b,b,b"));
        assert!(is_jordan_ideal(&BTreeSet::new(), &table).is_err());
        assert!(is_jordan_ideal(&corollary, &type_mult_table(3)).is_err());
    }

    #[test]
    fn local_derivations_commutation() {
        let s = spec("n=7;A=1,3,5");
        let d1 = map(&s, "1_5 5_2");
        let d2 = map(&s, "1_4 5_3");
        let ri = s.right_identities().members;
        assert!(commute_check(&d1, &d2, &ri).unwrap().commutes);
        let report = commute_check(&d1, &d2, &[rle("1_5 3_2")]).unwrap();
        let w = report.witness.unwrap();
        assert_eq!(w.d2_of_d1, rle("1_4 3_3"));
        assert_eq!(w.d1_of_d2, rle("1_5 3_2"));
        assert!(w.d1_of_d2.le_pointwise(&w.d2_of_d1));
        assert!(commute_check(&d1, &d1, &s.enumerate()).unwrap().commutes);

        // On class (a,b,b) only the first two commute; composing the table
        // values at 1_3 3_4 gives 1_4 3_3 one way and 1_5 3_2 the other.
        let abb = s.type_class(&ty("a,b,b")).unwrap();
        let first = map(&s, "1_5 5_2");
        let second = map(&s, "1_4 3 5_2");
        let third = map(&s, "1_4 5_3");
        assert!(commute_check(&first, &second, &abb).unwrap().commutes);
        for other in [&first, &second] {
            let w = commute_check(other, &third, &abb).unwrap().witness.unwrap();
            assert_eq!(w.gamma, rle("1_3 3_4"));
            assert_eq!(w.d2_of_d1, rle("1_4 3_3"));
            assert_eq!(w.d1_of_d2, rle("1_5 3_2"));
        }
    }

    #[test]
    fn lemma_checks() {
        let s = spec("n=7;A=1,3,5");
        let report = lemma1_check(&s).unwrap();
        assert!(report.holds);
        assert_eq!(report.families.len(), 10);
        let ri = s.right_identities().members;
        for g in &ri {
            assert_eq!(g.mul(&rle("1_5 3_2")).unwrap(), g.mul(&rle("1_4 3_3")).unwrap());
        }
        let big = spec("n=8;A=1,3,5,7");
        let report = lemma1_check(&big).unwrap();
        assert!(report.holds);
        assert!(report.families.iter().any(|t| t.is_idempotent_form()));
    }
}
