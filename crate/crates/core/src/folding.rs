//! Diagram foldings and virtualization.
//!
//! A folding embeds the weight lattice of a source type into that of a
//! target type: each source node i owns a set of target nodes (its orbit)
//! and a positive integer scale `gamma_i`, and the map on weights sends
//! `Lambda_i` to `gamma_i` times the sum of the fundamental weights over the
//! orbit.  Root operators virtualize as products over the orbit of target
//! operators applied with amount `gamma_i`.  The embedding respects the
//! operators exactly when, for all source nodes i and k and every target
//! node j' in the orbit of k,
//!
//! ```text
//! gamma_i * sum over j in orbit(i) of A_target[j', j]  =  gamma_k * A_source[k, i]
//! ```
//!
//! (taking k = i this forces orbits to span no target edges).  The standard
//! catalog covers every affine type that is not simply laced, embedding it
//! into an untwisted simply laced type, and each catalog folding restricts
//! to a folding of the classical subdiagrams.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::crystal_graph::{CrystalGraph, NodeLabel};
use crate::crystal_ops::{epsilon, lower, phi, raise};
use crate::paths::Path;
use crate::report::{Counterexample, Report};
use crate::root_data::{CartanType, Family, RootDatum, Weight};
use crate::{rat, Error, Rational, Result};

/// An embedding of one root datum into another along a diagram folding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Folding {
    source: RootDatum,
    target: RootDatum,
    orbits: BTreeMap<usize, Vec<usize>>,
    gamma: BTreeMap<usize, i64>,
}

impl Folding {
    /// Build a folding from explicit data, validating only the shape: the
    /// orbits must partition the target nodes, one orbit and one positive
    /// scale per source node, and in affine pairs node 0 must own node 0.
    /// Whether the embedding respects the operators is the business of
    /// [`Folding::check_conditions`].
    pub fn new(
        source: RootDatum,
        target: RootDatum,
        orbits: BTreeMap<usize, Vec<usize>>,
        gamma: BTreeMap<usize, i64>,
    ) -> Result<Folding> {
        if source.is_affine() != target.is_affine() {
            return Err(Error::InvalidFolding(format!(
                "{} and {} do not have the same level structure",
                source.cartan_type(),
                target.cartan_type()
            )));
        }
        let index_set: Vec<usize> = source.index_set().to_vec();
        if orbits.keys().cloned().collect::<Vec<_>>() != index_set
            || gamma.keys().cloned().collect::<Vec<_>>() != index_set
        {
            return Err(Error::InvalidFolding(format!(
                "orbits and scales must be indexed by the nodes of {}",
                source.cartan_type()
            )));
        }
        if let Some((i, &g)) = gamma.iter().find(|(_, &g)| g < 1) {
            return Err(Error::InvalidFolding(format!(
                "scale {} at node {} is not a positive integer",
                g, i
            )));
        }
        let mut covered: Vec<usize> = Vec::new();
        for (i, orbit) in &orbits {
            if orbit.is_empty() {
                return Err(Error::InvalidFolding(format!("empty orbit at node {}", i)));
            }
            covered.extend_from_slice(orbit);
        }
        covered.sort_unstable();
        if covered != target.index_set() {
            return Err(Error::InvalidFolding(format!(
                "orbits do not partition the nodes of {}",
                target.cartan_type()
            )));
        }
        if source.is_affine() && !orbits[&0].contains(&0) {
            return Err(Error::InvalidFolding(
                "node 0 must belong to the orbit of node 0".into(),
            ));
        }
        let mut orbits = orbits;
        for orbit in orbits.values_mut() {
            orbit.sort_unstable();
        }
        Ok(Folding {
            source,
            target,
            orbits,
            gamma,
        })
    }

    /// The standard folding whose source is the given affine type.  Every
    /// affine type with a multiple bond or a twist has one; its target is
    /// untwisted and simply laced.
    pub fn standard(ct: &CartanType) -> Result<Folding> {
        let no_folding = || {
            Error::InvalidFolding(format!(
                "{} has no standard folding (it is already simply laced)",
                ct
            ))
        };
        if !ct.is_affine() {
            return Err(no_folding());
        }
        let n = ct.classical_rank();
        // orbits of A_{2n-1}~ under j -> 2n - j
        let onto_a = |n: usize| -> Vec<(usize, Vec<usize>)> {
            (0..=n)
                .map(|i| {
                    let orbit = if i == 0 || i == n {
                        vec![i]
                    } else {
                        vec![i, 2 * n - i]
                    };
                    (i, orbit)
                })
                .collect()
        };
        // orbits of D_{n+1}~ under the swap of the two tail nodes
        let onto_d = |n: usize| -> Vec<(usize, Vec<usize>)> {
            (0..=n)
                .map(|i| {
                    let orbit = if i == n { vec![n, n + 1] } else { vec![i] };
                    (i, orbit)
                })
                .collect()
        };
        let onto_e6 = || {
            vec![
                (0, vec![0]),
                (1, vec![6]),
                (2, vec![3]),
                (3, vec![2, 4]),
                (4, vec![1, 5]),
            ]
        };
        let onto_d4 = || vec![(0, vec![0]), (1, vec![2]), (2, vec![1, 3, 4])];
        let ends = |n: usize, at_zero: i64, at_n: i64| -> Vec<i64> {
            (0..=n)
                .map(|i| {
                    if i == 0 {
                        at_zero
                    } else if i == n {
                        at_n
                    } else {
                        1
                    }
                })
                .collect()
        };
        let twist = ct.twist_order().expect("affine type");
        let (target, orbits, gamma): (CartanType, Vec<(usize, Vec<usize>)>, Vec<i64>) =
            match (ct.family(), twist, ct.dagger()) {
                (Family::C, 1, _) => (
                    CartanType::new(Family::A, 2 * n - 1, Some(1), false)?,
                    onto_a(n),
                    ends(n, 2, 2),
                ),
                (Family::A, 2, false) if ct.rank() % 2 == 0 => (
                    CartanType::new(Family::A, 2 * n - 1, Some(1), false)?,
                    onto_a(n),
                    ends(n, 1, 2),
                ),
                (Family::A, 2, true) => (
                    CartanType::new(Family::A, 2 * n - 1, Some(1), false)?,
                    onto_a(n),
                    ends(n, 2, 1),
                ),
                (Family::D, 2, _) => (
                    CartanType::new(Family::A, 2 * n - 1, Some(1), false)?,
                    onto_a(n),
                    ends(n, 1, 1),
                ),
                (Family::B, 1, _) => (
                    CartanType::new(Family::D, n + 1, Some(1), false)?,
                    onto_d(n),
                    (0..=n).map(|i| if i == n { 1 } else { 2 }).collect(),
                ),
                (Family::A, 2, false) => (
                    CartanType::new(Family::D, n + 1, Some(1), false)?,
                    onto_d(n),
                    ends(n, 1, 1),
                ),
                (Family::F, 1, _) => (
                    CartanType::new(Family::E, 6, Some(1), false)?,
                    onto_e6(),
                    vec![2, 2, 2, 1, 1],
                ),
                (Family::E, 2, _) => (
                    CartanType::new(Family::E, 6, Some(1), false)?,
                    onto_e6(),
                    vec![1, 1, 1, 1, 1],
                ),
                (Family::G, 1, _) => (
                    CartanType::new(Family::D, 4, Some(1), false)?,
                    onto_d4(),
                    vec![3, 3, 1],
                ),
                (Family::D, 3, _) => (
                    CartanType::new(Family::D, 4, Some(1), false)?,
                    onto_d4(),
                    vec![1, 1, 1],
                ),
                _ => return Err(no_folding()),
            };
        let index_set: Vec<usize> = (0..=n).collect();
        Folding::new(
            RootDatum::new(ct.clone()),
            RootDatum::new(target),
            orbits.into_iter().collect(),
            index_set.into_iter().zip(gamma).collect(),
        )
    }

    /// Restrict an affine folding to the classical subdiagrams on both
    /// sides, renumbering the nodes to the standard finite labels.
    pub fn finite_restriction(&self) -> Result<Folding> {
        let (src_fin, src_map) = self.source.classical_part()?;
        let (tgt_fin, tgt_map) = self.target.classical_part()?;
        let mut orbits = BTreeMap::new();
        let mut gamma = BTreeMap::new();
        for (&i, orbit) in &self.orbits {
            if i == 0 {
                continue;
            }
            let new_i = src_map[&i];
            let mut new_orbit = Vec::with_capacity(orbit.len());
            for &j in orbit {
                let Some(&nj) = tgt_map.get(&j) else {
                    return Err(Error::InvalidFolding(format!(
                        "orbit of node {} reaches the affine node of {}",
                        i,
                        self.target.cartan_type()
                    )));
                };
                new_orbit.push(nj);
            }
            orbits.insert(new_i, new_orbit);
            gamma.insert(new_i, self.gamma[&i]);
        }
        Folding::new(src_fin, tgt_fin, orbits, gamma)
    }

    /// Resolve a folding from a name of the form `X>Y` (either side may
    /// name the source).  Affine names select from the standard catalog;
    /// finite names select classical restrictions of catalog foldings.  The
    /// finite pairs F4/E6 and G2/D4 each arise from two different catalog
    /// foldings, so they need `gamma` (the scales in ascending node order)
    /// to say which one is meant.
    pub fn from_name(name: &str) -> Result<Folding> {
        Folding::from_name_with_gamma(name, None)
    }

    pub fn from_name_with_gamma(name: &str, gamma: Option<&[i64]>) -> Result<Folding> {
        let (xs, ys) = name
            .split_once('>')
            .ok_or_else(|| Error::InvalidFolding(format!("{:?} is not of the form X>Y", name)))?;
        let x: CartanType = xs.trim().parse()?;
        let y: CartanType = ys.trim().parse()?;
        let mut candidates: Vec<Folding> = Vec::new();
        if x.is_affine() && y.is_affine() {
            for (s, t) in [(&x, &y), (&y, &x)] {
                if let Ok(f) = Folding::standard(s) {
                    if f.target.cartan_type() == t {
                        candidates.push(f);
                    }
                }
            }
        } else if !x.is_affine() && !y.is_affine() {
            for (s, t) in [(&x, &y), (&y, &x)] {
                for affine in affine_sources_over(s) {
                    let Ok(f) = Folding::standard(&affine) else {
                        continue;
                    };
                    let Ok(r) = f.finite_restriction() else {
                        continue;
                    };
                    if r.source.cartan_type() == s && r.target.cartan_type() == t {
                        candidates.push(r);
                    }
                }
            }
        } else {
            return Err(Error::InvalidFolding(format!(
                "{} and {} mix finite and affine types",
                x, y
            )));
        }
        candidates.dedup();
        if let Some(g) = gamma {
            candidates.retain(|f| {
                f.source
                    .index_set()
                    .iter()
                    .map(|i| f.gamma[i])
                    .collect::<Vec<_>>()
                    == g
            });
        }
        match candidates.len() {
            1 => Ok(candidates.remove(0)),
            0 => Err(Error::InvalidFolding(format!(
                "no standard folding relates {} and {}",
                x, y
            ))),
            _ => {
                let options: Vec<String> = candidates
                    .iter()
                    .map(|f| {
                        format!(
                            "gamma = {:?}",
                            f.source
                                .index_set()
                                .iter()
                                .map(|i| f.gamma[i])
                                .collect::<Vec<_>>()
                        )
                    })
                    .collect();
                Err(Error::InvalidFolding(format!(
                    "{} foldings relate {} and {}; pick one by scale: {}",
                    candidates.len(),
                    x,
                    y,
                    options.join(" or ")
                )))
            }
        }
    }

    pub fn source(&self) -> &RootDatum {
        &self.source
    }

    pub fn target(&self) -> &RootDatum {
        &self.target
    }

    /// Target nodes owned by source node i, in ascending order.
    pub fn orbit(&self, i: usize) -> Result<&[usize]> {
        self.orbits
            .get(&i)
            .map(|o| o.as_slice())
            .ok_or_else(|| Error::IndexOutOfRange {
                index: i,
                cartan_type: self.source.cartan_type().to_string(),
            })
    }

    pub fn gamma(&self, i: usize) -> Result<i64> {
        self.gamma
            .get(&i)
            .copied()
            .ok_or_else(|| Error::IndexOutOfRange {
                index: i,
                cartan_type: self.source.cartan_type().to_string(),
            })
    }

    pub fn name(&self) -> String {
        format!(
            "{}>{}",
            self.source.cartan_type(),
            self.target.cartan_type()
        )
    }

    /// Verify the embedding condition at every triple of nodes.  Passing is
    /// necessary and sufficient for the virtual operators to realize the
    /// source operators on image paths.
    pub fn check_conditions(&self) -> Report {
        let report = Report::pass("folding-conditions")
            .with_param("folding", self.name())
            .with_size("source-nodes", self.source.node_count() as u64)
            .with_size("target-nodes", self.target.node_count() as u64);
        for (&i, orbit_i) in &self.orbits {
            for (&k, orbit_k) in &self.orbits {
                let want = rat(self.gamma[&k]) * rat(self.source.entry(k, i).expect("source node"));
                for &jp in orbit_k {
                    let mut sum = Rational::zero();
                    for &j in orbit_i {
                        sum += rat(self.target.entry(jp, j).expect("target node"));
                    }
                    let got = rat(self.gamma[&i]) * sum;
                    if got != want {
                        return Report::fail(
                            "folding-conditions",
                            Counterexample {
                                node: format!("i = {}, k = {}, target row {}", i, k, jp),
                                index: Some(jp),
                                lhs: format!("gamma_i * orbit row sum = {}", got),
                                rhs: format!("gamma_k * A[k, i] = {}", want),
                            },
                        )
                        .with_param("folding", self.name());
                    }
                }
            }
        }
        report
    }

    /// The weight embedding: `Lambda_i` maps to `gamma_i` times the sum of
    /// the fundamental weights over the orbit of i, and the null root
    /// coordinate scales so that the source null root lands on a multiple
    /// of the target one.
    pub fn psi(&self, w: &Weight) -> Result<Weight> {
        let mut coords: Vec<(usize, Rational)> = Vec::new();
        for (&i, c) in w.lambda_coords() {
            let g = rat(self.gamma(i)?);
            for &j in self.orbit(i)? {
                coords.push((j, c * &g));
            }
        }
        let delta = if self.source.is_affine() {
            w.delta_coeff() * rat(self.source.a(0)?) * rat(self.gamma[&0])
                / rat(self.target.a(0)?)
        } else {
            w.delta_coeff().clone()
        };
        Ok(Weight::from_coords(coords, delta))
    }

    /// Apply the weight embedding to every segment.
    pub fn virtualize_path(&self, p: &Path) -> Result<Path> {
        let segments: Result<Vec<Weight>> = p.segments().iter().map(|s| self.psi(s)).collect();
        Ok(Path::from_segments(segments?))
    }

    /// The virtual raising operator for source node i: the product over the
    /// orbit of target raising operators applied with amount `gamma_i`.
    /// Defined only when every factor is defined.
    pub fn virtual_raise(&self, p: &Path, i: usize) -> Result<Option<Path>> {
        self.virtual_op(p, i, true, false)
    }

    /// The virtual lowering operator for source node i.
    pub fn virtual_lower(&self, p: &Path, i: usize) -> Result<Option<Path>> {
        self.virtual_op(p, i, false, false)
    }

    fn virtual_op(
        &self,
        p: &Path,
        i: usize,
        raising: bool,
        reversed: bool,
    ) -> Result<Option<Path>> {
        let g = self.gamma(i)? as u32;
        let mut orbit: Vec<usize> = self.orbit(i)?.to_vec();
        if reversed {
            orbit.reverse();
        }
        let mut cur = p.clone();
        for j in orbit {
            let next = if raising {
                raise(&self.target, &cur, j, g)?
            } else {
                lower(&self.target, &cur, j, g)?
            };
            match next {
                Some(q) => cur = q,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    /// Generate the full source crystal of `lambda` and certify the
    /// embedding on it: every image path lies in the target crystal of the
    /// image weight, the target statistics on each orbit are the source
    /// statistics scaled by gamma, and raising and lowering commute with
    /// the embedding (with the virtual operators independent of the order
    /// in which the orbit is traversed).
    pub fn verify_virtualization(&self, lambda: &Weight, cap: usize) -> Result<Report> {
        let src = CrystalGraph::generate(&self.source, lambda, cap)?;
        let image_lambda = self.psi(lambda)?;
        let tgt = CrystalGraph::generate(&self.target, &image_lambda, cap)?;
        let mut tgt_paths: BTreeMap<&Path, usize> = BTreeMap::new();
        for v in 0..tgt.node_count() {
            let NodeLabel::Path(p) = tgt.label(v) else {
                unreachable!("generated graphs label nodes by paths")
            };
            tgt_paths.insert(p, v);
        }
        let mut stat_checks = 0u64;
        let mut op_checks = 0u64;
        let fail = |path: &Path, index: Option<usize>, lhs: String, rhs: String| {
            Report::fail(
                "virtualization",
                Counterexample {
                    node: format!("{}", path),
                    index,
                    lhs,
                    rhs,
                },
            )
            .with_param("folding", self.name())
            .with_param("lambda", lambda)
        };
        for v in 0..src.node_count() {
            let NodeLabel::Path(p) = src.label(v) else {
                unreachable!("generated graphs label nodes by paths")
            };
            let image = self.virtualize_path(p)?;
            if !tgt_paths.contains_key(&image) {
                return Ok(fail(
                    p,
                    None,
                    format!("image {}", image),
                    format!("a path of the target crystal of {}", image_lambda),
                ));
            }
            if self.psi(&p.endpoint())? != image.endpoint() {
                return Ok(fail(
                    p,
                    None,
                    format!("image endpoint {}", image.endpoint()),
                    format!("embedded weight {}", self.psi(&p.endpoint())?),
                ));
            }
            for &i in self.source.index_set() {
                let g = self.gamma[&i] as u64;
                let (se, sp) = (epsilon(&self.source, p, i)?, phi(&self.source, p, i)?);
                for &j in self.orbit(i)? {
                    let te = epsilon(&self.target, &image, j)?;
                    let tp = phi(&self.target, &image, j)?;
                    stat_checks += 1;
                    if te != g * se || tp != g * sp {
                        return Ok(fail(
                            p,
                            Some(j),
                            format!("target statistics ({}, {})", te, tp),
                            format!("scaled source statistics ({}, {})", g * se, g * sp),
                        ));
                    }
                }
                for raising in [true, false] {
                    let stepped = if raising {
                        raise(&self.source, p, i, 1)?
                    } else {
                        lower(&self.source, p, i, 1)?
                    };
                    let virt = self.virtual_op(&image, i, raising, false)?;
                    let virt_rev = self.virtual_op(&image, i, raising, true)?;
                    op_checks += 1;
                    if virt != virt_rev {
                        return Ok(fail(
                            p,
                            Some(i),
                            "orbit order changes the virtual operator".into(),
                            "virtual operators are order independent".into(),
                        ));
                    }
                    match (&stepped, &virt) {
                        (None, None) => {}
                        (Some(q), Some(vq)) => {
                            if &self.virtualize_path(q)? != vq {
                                return Ok(fail(
                                    p,
                                    Some(i),
                                    format!("virtual step {}", vq),
                                    format!("image of source step {}", q),
                                ));
                            }
                        }
                        _ => {
                            return Ok(fail(
                                p,
                                Some(i),
                                format!("source step defined: {}", stepped.is_some()),
                                format!("virtual step defined: {}", virt.is_some()),
                            ));
                        }
                    }
                }
            }
        }
        Ok(Report::pass("virtualization")
            .with_param("folding", self.name())
            .with_param("lambda", lambda)
            .with_size("source-nodes", src.node_count() as u64)
            .with_size("target-nodes", tgt.node_count() as u64)
            .with_size("statistic-checks", stat_checks)
            .with_size("operator-checks", op_checks))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let orbits: serde_json::Map<String, serde_json::Value> = self
            .orbits
            .iter()
            .map(|(i, o)| (i.to_string(), serde_json::json!(o)))
            .collect();
        let gamma: serde_json::Map<String, serde_json::Value> = self
            .gamma
            .iter()
            .map(|(i, g)| (i.to_string(), serde_json::json!(g)))
            .collect();
        serde_json::json!({
            "source": self.source.cartan_type().to_string(),
            "target": self.target.cartan_type().to_string(),
            "orbits": orbits,
            "gamma": gamma,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Folding> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("folding must be an object".into()))?;
        let type_of = |key: &str| -> Result<RootDatum> {
            let name = obj
                .get(key)
                .and_then(|t| t.as_str())
                .ok_or_else(|| Error::Parse(format!("folding missing {}", key)))?;
            RootDatum::from_name(name)
        };
        let source = type_of("source")?;
        let target = type_of("target")?;
        let orbits_obj = obj
            .get("orbits")
            .and_then(|o| o.as_object())
            .ok_or_else(|| Error::Parse("folding missing orbits".into()))?;
        let mut orbits = BTreeMap::new();
        for (k, val) in orbits_obj {
            let i: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad orbit key {:?}", k)))?;
            let arr = val
                .as_array()
                .ok_or_else(|| Error::Parse("orbit must be an array".into()))?;
            let orbit: Option<Vec<usize>> =
                arr.iter().map(|x| x.as_u64().map(|x| x as usize)).collect();
            orbits.insert(
                i,
                orbit.ok_or_else(|| Error::Parse("orbit entries must be node ids".into()))?,
            );
        }
        let gamma_obj = obj
            .get("gamma")
            .and_then(|g| g.as_object())
            .ok_or_else(|| Error::Parse("folding missing gamma".into()))?;
        let mut gamma = BTreeMap::new();
        for (k, val) in gamma_obj {
            let i: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad gamma key {:?}", k)))?;
            let g = val
                .as_i64()
                .ok_or_else(|| Error::Parse("gamma entries must be integers".into()))?;
            gamma.insert(i, g);
        }
        Folding::new(source, target, orbits, gamma)
    }
}

impl std::fmt::Display for Folding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Affine catalog sources whose classical part is the given finite type.
fn affine_sources_over(finite: &CartanType) -> Vec<CartanType> {
    if finite.is_affine() {
        return Vec::new();
    }
    let n = finite.rank();
    let mut out = Vec::new();
    let mut push = |family, rank, twist, dagger| {
        if let Ok(ct) = CartanType::new(family, rank, twist, dagger) {
            out.push(ct);
        }
    };
    match finite.family() {
        Family::C => {
            push(Family::C, n, Some(1), false);
            push(Family::A, 2 * n, Some(2), false);
            if n >= 2 {
                push(Family::A, 2 * n - 1, Some(2), false);
            }
        }
        Family::B => {
            push(Family::B, n, Some(1), false);
            push(Family::A, 2 * n, Some(2), true);
            push(Family::D, n + 1, Some(2), false);
        }
        Family::F => {
            push(Family::F, 4, Some(1), false);
            push(Family::E, 6, Some(2), false);
        }
        Family::G => {
            push(Family::G, 2, Some(1), false);
            push(Family::D, 4, Some(3), false);
        }
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn w(coords: &[(usize, i64)]) -> Weight {
        Weight::from_coords(coords.iter().map(|&(i, c)| (i, rat(c))), Rational::zero())
    }

    #[test]
    fn standard_catalog_passes_conditions() {
        let catalog: &[(&str, &str, &[i64])] = &[
            ("C2~", "A3~", &[2, 1, 2]),
            ("C3~", "A5~", &[2, 1, 1, 2]),
            ("C4~", "A7~", &[2, 1, 1, 1, 2]),
            ("A2~2", "A1~", &[1, 2]),
            ("A4~2", "A3~", &[1, 1, 2]),
            ("A6~2", "A5~", &[1, 1, 1, 2]),
            ("A2~2d", "A1~", &[2, 1]),
            ("A4~2d", "A3~", &[2, 1, 1]),
            ("A6~2d", "A5~", &[2, 1, 1, 1]),
            ("D3~2", "A3~", &[1, 1, 1]),
            ("D4~2", "A5~", &[1, 1, 1, 1]),
            ("D5~2", "A7~", &[1, 1, 1, 1, 1]),
            ("B3~", "D4~", &[2, 2, 2, 1]),
            ("B4~", "D5~", &[2, 2, 2, 2, 1]),
            ("A5~2", "D4~", &[1, 1, 1, 1]),
            ("A7~2", "D5~", &[1, 1, 1, 1, 1]),
            ("F4~", "E6~", &[2, 2, 2, 1, 1]),
            ("E6~2", "E6~", &[1, 1, 1, 1, 1]),
            ("G2~", "D4~", &[3, 3, 1]),
            ("D4~3", "D4~", &[1, 1, 1]),
        ];
        for &(src, tgt, gammas) in catalog {
            let ct: CartanType = src.parse().unwrap();
            let f = Folding::standard(&ct).expect(src);
            assert_eq!(f.target().cartan_type().to_string(), tgt, "{}", src);
            let listed: Vec<i64> = f
                .source()
                .index_set()
                .iter()
                .map(|&i| f.gamma(i).unwrap())
                .collect();
            assert_eq!(listed, gammas, "{}", src);
            let report = f.check_conditions();
            assert!(report.is_pass(), "{}: {:?}", src, report);
            // the classical restriction must satisfy the same conditions
            let r = f.finite_restriction().expect(src);
            let report = r.check_conditions();
            assert!(report.is_pass(), "{} restricted: {:?}", src, report);
            // and the name resolves back to the same folding
            assert_eq!(Folding::from_name(&f.name()).unwrap(), f, "{}", src);
        }
        // simply laced types have nothing to fold
        assert!(Folding::standard(&"A3~".parse().unwrap()).is_err());
        assert!(Folding::standard(&"D4~".parse().unwrap()).is_err());
        assert!(Folding::standard(&"E7~".parse().unwrap()).is_err());
        assert!(Folding::standard(&"A3".parse().unwrap()).is_err());
    }

    #[test]
    fn names_resolve_in_both_orders_and_report_ambiguity() {
        let f = Folding::from_name("C2~>A3~").unwrap();
        assert_eq!(f, Folding::from_name("A3~>C2~").unwrap());
        // the two catalog foldings over C2 restrict to the same finite map
        let r = Folding::from_name("A3>C2").unwrap();
        assert_eq!(r, Folding::from_name("C2>A3").unwrap());
        assert_eq!(r.orbit(1).unwrap(), &[1, 3]);
        assert_eq!(r.orbit(2).unwrap(), &[2]);
        assert_eq!((r.gamma(1).unwrap(), r.gamma(2).unwrap()), (1, 2));
        // B2 into A3 arises twice with identical data as well
        let r = Folding::from_name("A3>B2").unwrap();
        assert_eq!((r.gamma(1).unwrap(), r.gamma(2).unwrap()), (1, 1));
        // F4 into E6 is genuinely ambiguous
        let err = Folding::from_name("E6>F4").unwrap_err();
        assert!(err.to_string().contains("2 foldings"), "{}", err);
        let a = Folding::from_name_with_gamma("E6>F4", Some(&[2, 2, 1, 1])).unwrap();
        let b = Folding::from_name_with_gamma("E6>F4", Some(&[1, 1, 1, 1])).unwrap();
        assert_ne!(a, b);
        assert_eq!(a.orbit(1).unwrap(), &[6]);
        assert_eq!(b.orbit(1).unwrap(), &[1, 5]);
        assert!(a.check_conditions().is_pass());
        assert!(b.check_conditions().is_pass());
        // same for G2 into D4
        assert!(Folding::from_name("D4>G2").is_err());
        let a = Folding::from_name_with_gamma("D4>G2", Some(&[3, 1])).unwrap();
        assert_eq!(a.orbit(1).unwrap(), &[2]);
        let b = Folding::from_name_with_gamma("D4>G2", Some(&[1, 1])).unwrap();
        assert_eq!(b.orbit(1).unwrap(), &[1, 3, 4]);
        assert!(a.check_conditions().is_pass());
        assert!(b.check_conditions().is_pass());
        // unrelated pairs have no folding
        assert!(Folding::from_name("A3>A3").is_err());
        assert!(Folding::from_name("C2>B3").is_err());
        assert!(Folding::from_name("C2~>A3").is_err());
    }

    #[test]
    fn conditions_reject_wrong_data() {
        // correct orbits but the scale on the folded pair is missing
        let a3 = RootDatum::from_name("A3").unwrap();
        let c2 = RootDatum::from_name("C2").unwrap();
        let orbits: BTreeMap<usize, Vec<usize>> =
            [(1, vec![1, 3]), (2, vec![2])].into_iter().collect();
        let gamma: BTreeMap<usize, i64> = [(1, 1), (2, 1)].into_iter().collect();
        let f = Folding::new(c2.clone(), a3.clone(), orbits, gamma).unwrap();
        let report = f.check_conditions();
        assert!(!report.is_pass());
        assert!(report.counterexample.is_some());
        // an orbit spanning an edge of the target diagram
        let a1 = RootDatum::from_name("A1").unwrap();
        let a2 = RootDatum::from_name("A2").unwrap();
        let orbits: BTreeMap<usize, Vec<usize>> = [(1, vec![1, 2])].into_iter().collect();
        let gamma: BTreeMap<usize, i64> = [(1, 1)].into_iter().collect();
        let f = Folding::new(a1, a2, orbits, gamma).unwrap();
        assert!(!f.check_conditions().is_pass());
        // shape validation: orbits must partition the target nodes
        let orbits: BTreeMap<usize, Vec<usize>> =
            [(1, vec![1]), (2, vec![2])].into_iter().collect();
        let gamma: BTreeMap<usize, i64> = [(1, 1), (2, 2)].into_iter().collect();
        assert!(Folding::new(c2, a3, orbits, gamma).is_err());
    }

    #[test]
    fn weight_embedding_golden_values() {
        let f = Folding::from_name("A3>C2").unwrap();
        let lam = w(&[(1, 3), (2, 1)]);
        assert_eq!(f.psi(&lam).unwrap(), w(&[(1, 3), (2, 2), (3, 3)]));
        // the simple roots map to gamma-scaled orbit sums of simple roots
        let src_alpha1 = f.source().simple_root(1).unwrap();
        let a1 = f.target().simple_root(1).unwrap();
        let a3 = f.target().simple_root(3).unwrap();
        assert_eq!(f.psi(&src_alpha1).unwrap(), a1.add(&a3));
        let src_alpha2 = f.source().simple_root(2).unwrap();
        let a2 = f.target().simple_root(2).unwrap();
        assert_eq!(f.psi(&src_alpha2).unwrap(), a2.scale(&rat(2)));
        // affine: the null root scales by a_0 gamma_0
        let aff = Folding::from_name("C2~>A3~").unwrap();
        let delta = aff.source().delta().unwrap();
        let target_delta = aff.target().delta().unwrap();
        assert_eq!(aff.psi(&delta).unwrap(), target_delta.scale(&rat(2)));
        assert_eq!(aff.psi(&w(&[(0, 1)])).unwrap(), w(&[(0, 2)]));
        // and the same through the simple roots, without assuming linearity
        let mut sum = Weight::zero();
        for &i in aff.source().index_set() {
            let img = aff.psi(&aff.source().simple_root(i).unwrap()).unwrap();
            sum.add_scaled(&img, &rat(aff.source().a(i).unwrap()));
        }
        assert_eq!(sum, target_delta.scale(&rat(2)));
    }

    #[test]
    fn virtual_operators_golden_chain() {
        let f = Folding::from_name("A3>C2").unwrap();
        let pi = Path::straight(w(&[(1, 3), (2, 1)]));
        let image = f.virtualize_path(&pi).unwrap();
        assert_eq!(image, Path::straight(w(&[(1, 3), (2, 2), (3, 3)])));
        // virtual lowering at node 2 is the square of the target operator
        let down = f.virtual_lower(&image, 2).unwrap().unwrap();
        assert_eq!(down, Path::straight(w(&[(1, 5), (2, -2), (3, 5)])));
        let src_down = lower(f.source(), &pi, 2, 1).unwrap().unwrap();
        assert_eq!(src_down.endpoint(), w(&[(1, 5), (2, -1)]));
        assert_eq!(f.virtualize_path(&src_down).unwrap(), down);
        // and virtual raising undoes it
        assert_eq!(f.virtual_raise(&down, 2).unwrap().unwrap(), image);
        // node 1 acts once on each of the two orbit nodes
        let down1 = f.virtual_lower(&image, 1).unwrap().unwrap();
        let src_down1 = lower(f.source(), &pi, 1, 1).unwrap().unwrap();
        assert_eq!(f.virtualize_path(&src_down1).unwrap(), down1);
        assert_eq!(down1.endpoint(), w(&[(1, 1), (2, 4), (3, 1)]));
        // raising is not defined at the top in either picture
        assert_eq!(raise(f.source(), &pi, 1, 1).unwrap(), None);
        assert_eq!(f.virtual_raise(&image, 1).unwrap(), None);
    }

    #[test]
    fn virtualization_verified_on_small_crystals() {
        for (name, lam, gammas) in [
            ("A3>C2", w(&[(1, 1)]), None),
            ("A3>C2", w(&[(2, 1)]), None),
            ("A3>B2", w(&[(1, 1)]), None),
            ("A3>B2", w(&[(2, 1)]), None),
            ("D4>G2", w(&[(2, 1)]), Some(&[3i64, 1][..])),
            ("D4>G2", w(&[(2, 1)]), Some(&[1, 1][..])),
            ("D4>C3", w(&[(1, 1)]), None),
            ("D4>B3", w(&[(1, 1)]), None),
        ] {
            let f = Folding::from_name_with_gamma(name, gammas).unwrap();
            let report = f.verify_virtualization(&lam, 100_000).unwrap();
            assert!(report.is_pass(), "{} at {}: {:?}", name, lam, report);
            assert!(report.sizes["source-nodes"] > 0);
            assert!(report.sizes["operator-checks"] > 0);
        }
    }

    #[test]
    fn json_round_trip() {
        for name in ["C2~>A3~", "B3~>D4~", "G2~>D4~", "A3>C2"] {
            let f = Folding::from_name(name).unwrap();
            let back = Folding::from_json(&f.to_json()).unwrap();
            assert_eq!(f, back);
        }
    }
}
