//! Simplices `σ⁽ⁿ⁾{a₀ < … < a_{k-1}}`: the monotone maps of `C_n` whose image
//! lies in a fixed vertex set, together with their types, faces and the
//! censuses taken over the coordinate simplex `Ê_{C_k}`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chain::ChainEndo;
use crate::count;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexSpec {
    n: usize,
    vertices: Vec<usize>,
}

impl SimplexSpec {
    pub fn new(n: usize, vertices: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyChain);
        }
        if vertices.is_empty() {
            return Err(Error::InvalidSimplex("no vertices".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidSimplex(format!(
                "vertex {v} is outside the chain 0..{n}"
            )));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSimplex(
                "vertices must be strictly increasing".into(),
            ));
        }
        Ok(Self { n, vertices })
    }

    /// The coordinate simplex `σ⁽ᵏ⁾{0, .., k-1}`, i.e. all of `Ê_{C_k}`.
    pub fn coordinate(k: usize) -> Result<Self> {
        Self::new(k, (0..k).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Dimension `k` (number of vertices).
    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, value: usize) -> Option<usize> {
        self.vertices.binary_search(&value).ok()
    }

    pub fn contains(&self, f: &ChainEndo) -> bool {
        f.n() == self.n && f.values().iter().all(|&v| self.vertex_index(v).is_some())
    }

    pub(crate) fn require(&self, f: &ChainEndo) -> Result<()> {
        if self.contains(f) {
            Ok(())
        } else {
            Err(Error::NotInSimplex {
                endo: f.format_rle(),
                simplex: self.to_string(),
            })
        }
    }

    /// Constant map onto vertex `index`.
    pub fn vertex_constant(&self, index: usize) -> ChainEndo {
        ChainEndo::from_values_unchecked(vec![self.vertices[index]; self.n])
    }

    /// All elements, lexicographic by value vector.
    pub fn enumerate(&self) -> Vec<ChainEndo> {
        let mut out = Vec::with_capacity(count::simplex_size(self.n, self.k()) as usize);
        let mut current = Vec::with_capacity(self.n);
        self.extend(0, &mut current, &mut out);
        out
    }

    fn extend(&self, min_index: usize, current: &mut Vec<usize>, out: &mut Vec<ChainEndo>) {
        if current.len() == self.n {
            out.push(ChainEndo::from_values_unchecked(current.clone()));
            return;
        }
        for index in min_index..self.k() {
            current.push(self.vertices[index]);
            self.extend(index, current, out);
            current.pop();
        }
    }

    /// `(f(a₀), …, f(a_{k-1}))` over vertex indices.
    pub fn type_of(&self, f: &ChainEndo) -> Result<TypeVector> {
        self.require(f)?;
        let entries = self
            .vertices
            .iter()
            .map(|&a| self.vertex_index(f.eval(a)).expect("image lies in the vertex set"))
            .collect();
        Ok(TypeVector(ChainEndo::from_values_unchecked(entries)))
    }

    /// Every simplex member of type `t`.
    pub fn type_class(&self, t: &TypeVector) -> Result<Vec<ChainEndo>> {
        self.check_type(t)?;
        Ok(self
            .enumerate()
            .into_iter()
            .filter(|f| self.type_of(f).as_ref() == Ok(t))
            .collect())
    }

    pub(crate) fn check_type(&self, t: &TypeVector) -> Result<()> {
        if t.k() == self.k() {
            Ok(())
        } else {
            Err(Error::InvalidType(format!(
                "type {t} has {} entries, simplex {self} has dimension {}",
                t.k(),
                self.k()
            )))
        }
    }

    /// The face spanned by `subset` (chain values, any order).
    pub fn face(&self, subset: &[usize]) -> Result<Face> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&v) = subset.iter().find(|&&v| self.vertex_index(v).is_none()) {
            return Err(Error::NotSubset(v));
        }
        let vertices: Vec<usize> = subset.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let proper = vertices.len() < self.k();
        Ok(Face {
            spec: Self::new(self.n, vertices)?,
            proper,
        })
    }

    /// All `2^k - 1` faces, ordered by dimension and then vertex set.
    pub fn faces(&self) -> Vec<Face> {
        let k = self.k();
        let mut faces: Vec<Face> = (1u64..(1 << k))
            .map(|mask| {
                let subset: Vec<usize> = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| self.vertices[i])
                    .collect();
                self.face(&subset).expect("subset of own vertices")
            })
            .collect();
        faces.sort_by(|a, b| (a.spec.k(), &a.spec.vertices).cmp(&(b.spec.k(), &b.spec.vertices)));
        faces
    }

    /// Maps fixing every vertex; each is a right identity of the simplex.
    pub fn right_identities(&self) -> Census {
        let identity = TypeVector::identity(self.k());
        Census::new(
            "right-identities",
            self.type_class(&identity).expect("identity type has dimension k"),
        )
    }
}

impl fmt::Display for SimplexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};A=", self.n)?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Parses `"n=7;A=1,3,5"`.
impl FromStr for SimplexSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed simplex spec `{text}`"));
        let (n_part, a_part) = text.split_once(';').ok_or_else(bad)?;
        let n = n_part
            .trim()
            .strip_prefix("n=")
            .ok_or_else(bad)?
            .trim()
            .parse::<usize>()
            .map_err(|_| bad())?;
        let vertices = a_part
            .trim()
            .strip_prefix("A=")
            .ok_or_else(bad)?
            .split(',')
            .map(|v| v.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, vertices)
    }
}

impl Serialize for SimplexSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub spec: SimplexSpec,
    pub proper: bool,
}

/// A type `(a_{m₀}, …, a_{m_{k-1}})`, stored as the element `(m₀, …, m_{k-1})`
/// of the coordinate simplex `Ê_{C_k}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeVector(ChainEndo);

impl TypeVector {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        ChainEndo::from_values(entries)
            .map(Self)
            .map_err(|e| Error::InvalidType(e.to_string()))
    }

    pub fn from_endo(endo: ChainEndo) -> Self {
        Self(endo)
    }

    pub fn identity(k: usize) -> Self {
        Self(ChainEndo::from_values_unchecked((0..k).collect()))
    }

    pub fn constant(k: usize, level: usize) -> Self {
        assert!(level < k);
        Self(ChainEndo::from_values_unchecked(vec![level; k]))
    }

    pub fn k(&self) -> usize {
        self.0.n()
    }

    pub fn entries(&self) -> &[usize] {
        self.0.values()
    }

    pub fn as_endo(&self) -> &ChainEndo {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.0.add(&other.0).map(Self)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.0.mul(&other.0).map(Self)
    }

    /// `r∘c = r·c + c·r`.
    pub fn jordan(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    pub fn is_constant(&self) -> bool {
        self.0.constant_value().is_some()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn is_idempotent(&self) -> bool {
        self.0.then(&self.0) == self.0
    }

    /// Idempotent, but neither constant nor the identity.
    pub fn is_idempotent_form(&self) -> bool {
        self.is_idempotent() && !self.is_constant() && !self.is_identity()
    }

    /// Comma-separated letters, e.g. `a,a,b`.
    pub fn to_type_string(&self) -> String {
        self.entries()
            .iter()
            .map(|&m| vertex_letter(m))
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn vertex_letter(index: usize) -> String {
    if index < 26 {
        char::from(b'a' + index as u8).to_string()
    } else {
        format!("v{index}")
    }
}

fn letter_index(token: &str) -> Option<usize> {
    match token.as_bytes() {
        [b] if b.is_ascii_lowercase() => Some((b - b'a') as usize),
        [b'v', rest @ ..] if !rest.is_empty() => std::str::from_utf8(rest).ok()?.parse().ok(),
        _ => None,
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_type_string())
    }
}

/// Parses `a,a,b` (parentheses optional).
impl FromStr for TypeVector {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')');
        let entries = inner
            .split(',')
            .map(|tok| {
                letter_index(tok.trim())
                    .ok_or_else(|| Error::Parse(format!("bad type letter `{tok}` in `{text}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

impl Serialize for TypeVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_type_string())
    }
}

impl<'de> Deserialize<'de> for TypeVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// All types of dimension `k` in lexicographic order.
pub fn all_types(k: usize) -> Vec<TypeVector> {
    SimplexSpec::coordinate(k)
        .expect("k >= 1")
        .enumerate()
        .into_iter()
        .map(TypeVector)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub label: String,
    pub members: Vec<ChainEndo>,
}

impl Census {
    pub fn new(label: impl Into<String>, members: Vec<ChainEndo>) -> Self {
        Self {
            label: label.into(),
            members,
        }
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }
}

/// Elements `f` of `Ê_{C_k}` with `f^m = ℓ̄` for some `m ≥ 1`.
pub fn nilpotent_class(k: usize, level: usize) -> Result<Census> {
    if k == 0 || level >= k {
        return Err(Error::LevelOutOfRange { level, k });
    }
    let target = ChainEndo::from_values_unchecked(vec![level; k]);
    let members = SimplexSpec::coordinate(k)?
        .enumerate()
        .into_iter()
        .filter(|f| {
            let mut power = f.clone();
            for _ in 0..k {
                if power == target {
                    return true;
                }
                power = power.then(f);
            }
            false
        })
        .collect();
    Ok(Census::new(format!("nilpotent[k={k},l={level}]"), members))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotentCensus {
    pub idempotents: Census,
    pub idempotent_forms: Census,
    /// Constants, the identity and the idempotent forms.
    pub commuting_family: Census,
}

pub fn idempotent_type_census(k: usize) -> Result<IdempotentCensus> {
    let types = all_types(k);
    let pick = |pred: &dyn Fn(&TypeVector) -> bool| -> Vec<ChainEndo> {
        types.iter().filter(|t| pred(t)).map(|t| t.0.clone()).collect()
    };
    Ok(IdempotentCensus {
        idempotents: Census::new(format!("idempotents[k={k}]"), pick(&|t| t.is_idempotent())),
        idempotent_forms: Census::new(
            format!("idempotent-forms[k={k}]"),
            pick(&|t| t.is_idempotent_form()),
        ),
        commuting_family: Census::new(
            format!("constants+identity+idempotent-forms[k={k}]"),
            pick(&|t| t.is_constant() || t.is_identity() || t.is_idempotent_form()),
        ),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdealTransfer {
    /// Whether the type set is an ideal of the coordinate simplex.
    pub types: bool,
    /// Whether the lifted set is an ideal of the simplex.
    pub lifted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedSubsemiring {
    pub members: Vec<ChainEndo>,
    pub closed_under_add: bool,
    pub closed_under_mul: bool,
    /// `S·I ⊆ I`.
    pub left_ideal: IdealTransfer,
    /// `I·S ⊆ I`.
    pub right_ideal: IdealTransfer,
}

/// All simplex elements whose type lies in `types`.
///
/// `types` must be closed under `+` and `·` in the coordinate simplex.
pub fn lift_subsemiring(spec: &SimplexSpec, types: &BTreeSet<TypeVector>) -> Result<LiftedSubsemiring> {
    for t in types {
        spec.check_type(t)?;
    }
    let type_list: Vec<TypeVector> = types.iter().cloned().collect();
    if let Some((x, y, s)) = first_escape(&type_list, &type_list, |x, y| x.add(y).unwrap(), types) {
        return Err(Error::NotASubsemiring(format!("{x} + {y} = {s}")));
    }
    if let Some((x, y, s)) = first_escape(&type_list, &type_list, |x, y| x.mul(y).unwrap(), types) {
        return Err(Error::NotASubsemiring(format!("{x} · {y} = {s}")));
    }

    let all = spec.enumerate();
    let members: Vec<ChainEndo> = all
        .iter()
        .filter(|f| types.contains(&spec.type_of(f).expect("enumerated member")))
        .cloned()
        .collect();
    let member_set: BTreeSet<ChainEndo> = members.iter().cloned().collect();
    let escapes = |lhs: &[ChainEndo], rhs: &[ChainEndo], op: fn(&ChainEndo, &ChainEndo) -> ChainEndo| {
        first_escape(lhs, rhs, op, &member_set).is_some()
    };

    let every_type = all_types(spec.k());
    let types_escape = |lhs: &[TypeVector], rhs: &[TypeVector]| {
        first_escape(lhs, rhs, |x, y| x.mul(y).unwrap(), types).is_some()
    };

    Ok(LiftedSubsemiring {
        closed_under_add: !escapes(&members, &members, ChainEndo::join),
        closed_under_mul: !escapes(&members, &members, ChainEndo::then),
        left_ideal: IdealTransfer {
            types: !types_escape(&every_type, &type_list),
            lifted: !escapes(&all, &members, ChainEndo::then),
        },
        right_ideal: IdealTransfer {
            types: !types_escape(&type_list, &every_type),
            lifted: !escapes(&members, &all, ChainEndo::then),
        },
        members,
    })
}

fn first_escape<T: Ord + Clone>(
    lhs: &[T],
    rhs: &[T],
    op: impl Fn(&T, &T) -> T,
    set: &BTreeSet<T>,
) -> Option<(T, T, T)> {
    lhs.iter().find_map(|x| {
        rhs.iter().find_map(|y| {
            let z = op(x, y);
            (!set.contains(&z)).then(|| (x.clone(), y.clone(), z))
        })
    })
}
