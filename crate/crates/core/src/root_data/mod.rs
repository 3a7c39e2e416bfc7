//! Cartan types, weights, and root-datum operations.
//!
//! A [`Weight`] is stored in the basis of fundamental weights together with a
//! rational multiple of the null root `delta` (which is zero for finite
//! types).  Writing coordinates this way keeps every pairing
//! `<alpha_i^vee, mu>` a plain coordinate lookup, and it makes the null root
//! an honest basis element instead of a linear combination, so affine weights
//! round trip exactly.

mod tables;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::{rat, Error, Rational, Result};

/// Series letter of a Cartan type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Twist {
    order: u8,
    dagger: bool,
}

/// A finite or affine Cartan type, written like `A3`, `C2~`, `A5~2`, `A4~2d`,
/// `D3~2`, `E6~2`, or `D4~3`.
///
/// The rank in the name is the rank of the root system being named (for a
/// twisted type, the rank of the simply laced system it is built from), not
/// the number of Dynkin nodes.  The `d` suffix selects the variant of an even
/// twisted A type with the node order reversed, which moves the special node
/// to the other end of the diagram.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanType {
    family: Family,
    rank: usize,
    twist: Option<Twist>,
}

impl CartanType {
    /// Build and validate a type.  `twist_order` of `None` means finite,
    /// `Some(1)` untwisted affine, `Some(2)`/`Some(3)` twisted affine.
    pub fn new(family: Family, rank: usize, twist_order: Option<u8>, dagger: bool) -> Result<Self> {
        let twist = twist_order.map(|order| Twist { order, dagger });
        if dagger && twist_order != Some(2) {
            return Err(Error::UnknownCartanType(Self::render(family, rank, twist)));
        }
        let ct = CartanType {
            family,
            rank,
            twist,
        };
        if ct.admissible() {
            Ok(ct)
        } else {
            Err(Error::UnknownCartanType(ct.to_string()))
        }
    }

    fn admissible(&self) -> bool {
        let (family, n) = (self.family, self.rank);
        match self.twist {
            None => match family {
                Family::A => n >= 1,
                Family::B | Family::C => n >= 2,
                Family::D => n >= 4,
                Family::E => (6..=8).contains(&n),
                Family::F => n == 4,
                Family::G => n == 2,
            },
            Some(Twist { order: 1, dagger }) => {
                !dagger
                    && match family {
                        Family::A => n >= 1,
                        Family::B => n >= 3,
                        Family::C => n >= 2,
                        Family::D => n >= 4,
                        Family::E => (6..=8).contains(&n),
                        Family::F => n == 4,
                        Family::G => n == 2,
                    }
            }
            Some(Twist { order: 2, dagger }) => match family {
                Family::A if n % 2 == 0 => n >= 2,
                Family::A => !dagger && n >= 5,
                Family::D => !dagger && n >= 3,
                Family::E => !dagger && n == 6,
                _ => false,
            },
            Some(Twist {
                order: 3,
                dagger: false,
            }) => family == Family::D && n == 4,
            Some(_) => false,
        }
    }

    fn render(family: Family, rank: usize, twist: Option<Twist>) -> String {
        let mut s = format!("{}{}", family.letter(), rank);
        if let Some(t) = twist {
            s.push('~');
            if t.order != 1 {
                s.push_str(&t.order.to_string());
            }
            if t.dagger {
                s.push('d');
            }
        }
        s
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// The rank written in the name.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_affine(&self) -> bool {
        self.twist.is_some()
    }

    /// `None` for finite types, otherwise the twist order (1 for untwisted).
    pub fn twist_order(&self) -> Option<u8> {
        self.twist.map(|t| t.order)
    }

    pub fn dagger(&self) -> bool {
        self.twist.map_or(false, |t| t.dagger)
    }

    /// Number of nodes apart from the affine node: the rank of the classical
    /// subdiagram obtained by deleting node 0.  Equals the rank for finite
    /// types.
    pub fn classical_rank(&self) -> usize {
        match self.twist {
            None | Some(Twist { order: 1, .. }) => self.rank,
            Some(Twist { order: 2, .. }) => match self.family {
                Family::A => (self.rank + 1) / 2,
                Family::D => self.rank - 1,
                Family::E => 4,
                _ => unreachable!(),
            },
            Some(Twist { order: 3, .. }) => 2,
            Some(_) => unreachable!(),
        }
    }

    /// Dynkin node indices: `1..=rank` for finite types,
    /// `0..=classical_rank` for affine ones.
    pub fn index_set(&self) -> Vec<usize> {
        if self.is_affine() {
            (0..=self.classical_rank()).collect()
        } else {
            (1..=self.rank).collect()
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Self::render(self.family, self.rank, self.twist))
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::UnknownCartanType(s.to_string());
        let mut chars = s.chars();
        let family = chars.next().and_then(Family::from_char).ok_or_else(err)?;
        let rest = &s[1..];
        let digits = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if digits == 0 {
            return Err(err());
        }
        let rank: usize = rest[..digits].parse().map_err(|_| err())?;
        let tail = &rest[digits..];
        let (twist_order, dagger) = if tail.is_empty() {
            (None, false)
        } else {
            let t = tail.strip_prefix('~').ok_or_else(err)?;
            let (num, dag) = match t.strip_suffix('d') {
                Some(p) => (p, true),
                None => (t, false),
            };
            let order: u8 = if num.is_empty() {
                1
            } else {
                num.parse().map_err(|_| err())?
            };
            (Some(order), dag)
        };
        CartanType::new(family, rank, twist_order, dagger).map_err(|_| err())
    }
}

/// Parse a rational written as `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational {:?}", s));
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let numer: num::BigInt = n.trim().parse().map_err(|_| bad())?;
    let denom: num::BigInt = d.trim().parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// An element of the weight space, written over the fundamental weights plus
/// a rational multiple of the null root.
///
/// Invariant: the coordinate map stores no zero entries, so structural
/// equality is equality of weights.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    lambda: BTreeMap<usize, Rational>,
    delta: Rational,
}

impl Weight {
    pub fn zero() -> Self {
        Weight::default()
    }

    /// The fundamental weight `Lambda[i]`.
    pub fn fundamental(i: usize) -> Self {
        let mut lambda = BTreeMap::new();
        lambda.insert(i, Rational::one());
        Weight {
            lambda,
            delta: Rational::zero(),
        }
    }

    pub fn multiple_of_delta(c: Rational) -> Self {
        Weight {
            lambda: BTreeMap::new(),
            delta: c,
        }
    }

    /// Build from coordinate pairs (duplicates accumulate) and a delta part.
    pub fn from_coords<I>(coords: I, delta: Rational) -> Self
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut w = Weight {
            lambda: BTreeMap::new(),
            delta,
        };
        for (i, c) in coords {
            w.bump(i, c);
        }
        w
    }

    fn bump(&mut self, i: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let cur = self.lambda.remove(&i).unwrap_or_else(Rational::zero);
        let next = cur + c;
        if !next.is_zero() {
            self.lambda.insert(i, next);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.is_empty() && self.delta.is_zero()
    }

    /// Coordinate on `Lambda[i]`, which equals `<alpha_i^vee, self>`.
    pub fn coeff(&self, i: usize) -> Rational {
        self.lambda.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn delta_coeff(&self) -> &Rational {
        &self.delta
    }

    /// Nonzero fundamental-weight coordinates in index order.
    pub fn lambda_coords(&self) -> &BTreeMap<usize, Rational> {
        &self.lambda
    }

    /// `self + c * other`.
    pub fn add_scaled(&mut self, other: &Weight, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (i, v) in &other.lambda {
            self.bump(*i, v * c);
        }
        self.delta += &other.delta * c;
    }

    pub fn add(&self, other: &Weight) -> Weight {
        let mut w = self.clone();
        w.add_scaled(other, &Rational::one());
        w
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        let mut w = self.clone();
        w.add_scaled(other, &-Rational::one());
        w
    }

    pub fn neg(&self) -> Weight {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        if c.is_zero() {
            return Weight::zero();
        }
        Weight {
            lambda: self.lambda.iter().map(|(i, v)| (*i, v * c)).collect(),
            delta: &self.delta * c,
        }
    }

    /// Projection along the null root: the same weight with delta part zero.
    pub fn without_delta(&self) -> Weight {
        Weight {
            lambda: self.lambda.clone(),
            delta: Rational::zero(),
        }
    }

    /// All fundamental-weight coordinates are nonnegative integers.
    pub fn is_dominant_integral(&self) -> bool {
        self.lambda
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut lam = serde_json::Map::new();
        for (i, c) in &self.lambda {
            lam.insert(i.to_string(), serde_json::Value::String(c.to_string()));
        }
        serde_json::json!({ "lambda": lam, "delta": self.delta.to_string() })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Weight> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("weight must be an object".into()))?;
        let lam = obj
            .get("lambda")
            .and_then(|l| l.as_object())
            .ok_or_else(|| Error::Parse("weight missing lambda map".into()))?;
        let mut coords = Vec::new();
        for (k, val) in lam {
            let i: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad weight index {:?}", k)))?;
            let s = val
                .as_str()
                .ok_or_else(|| Error::Parse("weight coordinate must be a string".into()))?;
            coords.push((i, parse_rational(s)?));
        }
        let delta = match obj.get("delta") {
            Some(serde_json::Value::String(s)) => parse_rational(s)?,
            None => Rational::zero(),
            _ => return Err(Error::Parse("weight delta must be a string".into())),
        };
        Ok(Weight::from_coords(coords, delta))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn term(c: &Rational, sym: &str) -> (bool, String) {
            let mag = c.abs();
            let body = if mag.is_one() {
                sym.to_string()
            } else {
                format!("{}*{}", mag, sym)
            };
            (c.is_negative(), body)
        }
        let mut terms: Vec<(bool, String)> = self
            .lambda
            .iter()
            .map(|(i, c)| term(c, &format!("Lambda[{}]", i)))
            .collect();
        if !self.delta.is_zero() {
            terms.push(term(&self.delta, "delta"));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (neg, body)) in terms.iter().enumerate() {
            if k == 0 {
                if *neg {
                    f.write_str("-")?;
                }
            } else if *neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            f.write_str(body)?;
        }
        Ok(())
    }
}

/// A Cartan type together with its matrix and (for affine types) the Kac
/// labels.  All root and weight operations live here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    cartan_type: CartanType,
    nodes: Vec<usize>,
    matrix: Vec<Vec<i64>>,
    marks: Option<Vec<i64>>,
    comarks: Option<Vec<i64>>,
}

impl RootDatum {
    pub fn new(cartan_type: CartanType) -> Self {
        let data = tables::build(&cartan_type);
        RootDatum {
            nodes: cartan_type.index_set(),
            cartan_type,
            matrix: data.matrix,
            marks: data.marks,
            comarks: data.comarks,
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(Self::new(name.parse()?))
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn is_affine(&self) -> bool {
        self.cartan_type.is_affine()
    }

    /// Dynkin node indices in ascending order.
    pub fn index_set(&self) -> &[usize] {
        &self.nodes
    }

    /// The index set with the affine node removed (all nodes, for finite
    /// types).
    pub fn classical_index_set(&self) -> &[usize] {
        if self.is_affine() {
            &self.nodes[1..]
        } else {
            &self.nodes
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn pos(&self, i: usize) -> Result<usize> {
        self.nodes
            .binary_search(&i)
            .map_err(|_| Error::IndexOutOfRange {
                index: i,
                cartan_type: self.cartan_type.to_string(),
            })
    }

    /// Cartan matrix entry `<alpha_i^vee, alpha_j>`.
    pub fn entry(&self, i: usize, j: usize) -> Result<i64> {
        Ok(self.matrix[self.pos(i)?][self.pos(j)?])
    }

    /// Kac label `a_i` (affine types only).
    pub fn a(&self, i: usize) -> Result<i64> {
        let p = self.pos(i)?;
        self.marks
            .as_ref()
            .map(|m| m[p])
            .ok_or_else(|| Error::Domain("Kac labels exist only for affine types".into()))
    }

    /// Dual Kac label `a_i^vee` (affine types only).
    pub fn a_dual(&self, i: usize) -> Result<i64> {
        let p = self.pos(i)?;
        self.comarks
            .as_ref()
            .map(|m| m[p])
            .ok_or_else(|| Error::Domain("Kac labels exist only for affine types".into()))
    }

    /// The simple root `alpha_j` as a weight.  Its fundamental-weight
    /// coordinates are the j-th matrix column; for the affine node the delta
    /// part is `1/a_0`, which makes `delta = sum_j a_j alpha_j` exact.
    pub fn simple_root(&self, j: usize) -> Result<Weight> {
        let pj = self.pos(j)?;
        let delta = if self.is_affine() && j == 0 {
            Rational::one() / rat(self.marks.as_ref().unwrap()[0])
        } else {
            Rational::zero()
        };
        let coords = self
            .nodes
            .iter()
            .enumerate()
            .map(|(pi, &i)| (i, rat(self.matrix[pi][pj])));
        Ok(Weight::from_coords(coords, delta))
    }

    /// `<alpha_i^vee, w>`.
    pub fn pair(&self, i: usize, w: &Weight) -> Result<Rational> {
        self.pos(i)?;
        Ok(w.coeff(i))
    }

    /// Simple reflection `s_i(w) = w - <alpha_i^vee, w> alpha_i`.
    pub fn reflect(&self, i: usize, w: &Weight) -> Result<Weight> {
        let c = self.pair(i, w)?;
        let mut out = w.clone();
        out.add_scaled(&self.simple_root(i)?, &-c);
        Ok(out)
    }

    pub fn fundamental_weight(&self, i: usize) -> Result<Weight> {
        self.pos(i)?;
        Ok(Weight::fundamental(i))
    }

    /// The null root as a weight (affine types only).
    pub fn delta(&self) -> Result<Weight> {
        if !self.is_affine() {
            return Err(Error::Domain(
                "the null root exists only for affine types".into(),
            ));
        }
        Ok(Weight::multiple_of_delta(Rational::one()))
    }

    /// Sum of all fundamental weights.
    pub fn rho(&self) -> Weight {
        Weight::from_coords(
            self.nodes.iter().map(|&i| (i, Rational::one())),
            Rational::zero(),
        )
    }

    /// Level of a weight: its pairing with the canonical central element,
    /// `sum_i a_i^vee <alpha_i^vee, w>` (affine types only).
    pub fn level(&self, w: &Weight) -> Result<Rational> {
        if !self.is_affine() {
            return Err(Error::Domain("level is defined for affine types".into()));
        }
        let comarks = self.comarks.as_ref().unwrap();
        let mut acc = Rational::zero();
        for (p, &i) in self.nodes.iter().enumerate() {
            acc += w.coeff(i) * rat(comarks[p]);
        }
        Ok(acc)
    }

    /// Level-zero fundamental weight
    /// `varpi_i = Lambda_i - (a_i^vee / a_0^vee) Lambda_0` for a classical
    /// node i of an affine type.
    pub fn level_zero_fundamental_weight(&self, i: usize) -> Result<Weight> {
        if !self.is_affine() {
            return Err(Error::Domain(
                "level-zero fundamental weights exist only for affine types".into(),
            ));
        }
        let p = self.pos(i)?;
        if i == 0 {
            return Err(Error::Domain(
                "level-zero fundamental weights are indexed by classical nodes".into(),
            ));
        }
        let comarks = self.comarks.as_ref().unwrap();
        let ratio = rat(comarks[p]) / rat(comarks[0]);
        let mut w = Weight::fundamental(i);
        w.add_scaled(&Weight::fundamental(0), &-ratio);
        Ok(w)
    }

    /// Weyl dimension of the irreducible with highest weight `lam` (finite
    /// types, dominant integral weights).
    pub fn weyl_dimension(&self, lam: &Weight) -> Result<num::BigInt> {
        if self.is_affine() {
            return Err(Error::Domain(
                "Weyl dimension is defined for finite types".into(),
            ));
        }
        if !lam.is_dominant_integral() {
            return Err(Error::Domain(format!(
                "weight {} is not dominant integral",
                lam
            )));
        }
        for i in lam.lambda_coords().keys() {
            self.pos(*i)?;
        }
        let rho = self.rho();
        let shifted = lam.add(&rho);
        let mut num_acc = Rational::one();
        let mut den_acc = Rational::one();
        for coroot in self.positive_coroots() {
            let eval = |w: &Weight| -> Rational {
                let mut acc = Rational::zero();
                for (p, &i) in self.nodes.iter().enumerate() {
                    if coroot[p] != 0 {
                        acc += w.coeff(i) * rat(coroot[p]);
                    }
                }
                acc
            };
            num_acc *= eval(&shifted);
            den_acc *= eval(&rho);
        }
        let dim = num_acc / den_acc;
        debug_assert!(dim.is_integer() && dim.is_positive());
        Ok(dim.to_integer())
    }

    /// Coroot coordinate vectors (over node positions) of all positive
    /// roots, found by closing the simple roots under simple reflections.
    fn positive_coroots(&self) -> Vec<Vec<i64>> {
        let n = self.nodes.len();
        let mut seen = std::collections::BTreeSet::new();
        let mut queue = std::collections::VecDeque::new();
        for p in 0..n {
            let mut e = vec![0i64; n];
            e[p] = 1;
            queue.push_back((e.clone(), e));
        }
        let mut out = Vec::new();
        while let Some((root, coroot)) = queue.pop_front() {
            if !seen.insert(root.clone()) {
                continue;
            }
            if root.iter().all(|&c| c >= 0) {
                out.push(coroot.clone());
            }
            for i in 0..n {
                let mut r2 = root.clone();
                let mut c2 = coroot.clone();
                let pr: i64 = (0..n).map(|j| self.matrix[i][j] * root[j]).sum();
                r2[i] -= pr;
                let pc: i64 = (0..n).map(|j| self.matrix[j][i] * coroot[j]).sum();
                c2[i] -= pc;
                if !seen.contains(&r2) {
                    queue.push_back((r2, c2));
                }
            }
        }
        out
    }

    /// The finite root datum on the classical nodes, together with the map
    /// from each classical node of this type to its index in the standard
    /// numbering of the finite type (identity except where the standard
    /// finite tables number the subdiagram in the other direction).
    pub fn classical_part(&self) -> Result<(RootDatum, BTreeMap<usize, usize>)> {
        if !self.is_affine() {
            return Err(Error::Domain(
                "the classical part is defined for affine types".into(),
            ));
        }
        let ct = &self.cartan_type;
        let cr = ct.classical_rank();
        let finite = |family, rank| CartanType::new(family, rank, None, false);
        let identity = || (1..=cr).map(|i| (i, i)).collect::<BTreeMap<_, _>>();
        let (fin_ct, map) = match (ct.family(), ct.twist_order().unwrap(), ct.dagger()) {
            (f, 1, _) => (finite(f, cr)?, identity()),
            (Family::A, 2, dag) if ct.rank() % 2 == 0 => {
                if cr == 1 {
                    (finite(Family::A, 1)?, identity())
                } else if dag {
                    (finite(Family::B, cr)?, identity())
                } else {
                    (finite(Family::C, cr)?, identity())
                }
            }
            (Family::A, 2, _) => (finite(Family::C, cr)?, identity()),
            (Family::D, 2, _) => (finite(Family::B, cr)?, identity()),
            (Family::E, 2, _) => (finite(Family::F, 4)?, (1..=4).map(|i| (i, 5 - i)).collect()),
            (Family::D, 3, _) => (
                finite(Family::G, 2)?,
                [(1, 2), (2, 1)].into_iter().collect(),
            ),
            _ => unreachable!(),
        };
        Ok((RootDatum::new(fin_ct), map))
    }
}
