//! Crystal graphs: finite colored digraphs built from paths.
//!
//! A graph holds one node per path (or per pair of factor nodes, for tensor
//! products), one `f` edge and one `e` edge per node and color, and the
//! statistics and weight of every node.  Graphs are produced by closing a
//! seed path under the root operators, or by the tensor product rule, and
//! can be checked against the crystal axioms, compared up to isomorphism,
//! and serialized.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::crystal_ops::{epsilon, lower, phi, raise};
use crate::paths::Path;
use crate::report::{Counterexample, Report};
use crate::root_data::{RootDatum, Weight};
use crate::{Error, Result};

/// What a node stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeLabel {
    /// A piecewise linear path from the origin.
    Path(Path),
    /// A pair of node ids in the two factors of a tensor product.
    Pair(usize, usize),
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeLabel::Path(p) => write!(f, "{}", p),
            NodeLabel::Pair(a, b) => write!(f, "({}, {})", a, b),
        }
    }
}

/// A finite crystal graph over a fixed root datum.
///
/// When `classical` is set, node weights and edge weight differences live in
/// the classical projection (the null-root coordinate is dropped), which is
/// the right setting for projected level-zero crystals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalGraph {
    datum: RootDatum,
    classical: bool,
    labels: Vec<NodeLabel>,
    wt: Vec<Weight>,
    eps: Vec<BTreeMap<usize, u64>>,
    phi: Vec<BTreeMap<usize, u64>>,
    f_edges: Vec<BTreeMap<usize, usize>>,
    e_edges: Vec<BTreeMap<usize, usize>>,
}

/// Closure of a seed path under the root operators for every color.
///
/// Breadth first from the seed, which becomes node 0; for each node the
/// colors are scanned in ascending order, raising before lowering, so node
/// ids are deterministic.
pub(crate) fn generate_from(
    datum: &RootDatum,
    seed: Path,
    classical: bool,
    cap: usize,
) -> Result<CrystalGraph> {
    let seed = if classical {
        seed.without_delta()
    } else {
        seed
    };
    let mut ids: BTreeMap<Path, usize> = BTreeMap::new();
    let mut labels: Vec<Path> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    ids.insert(seed.clone(), 0);
    labels.push(seed);
    queue.push_back(0);
    let nodes: Vec<usize> = datum.index_set().to_vec();
    let mut f_edges: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new()];
    let mut e_edges: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new()];
    while let Some(v) = queue.pop_front() {
        for &i in &nodes {
            let path = labels[v].clone();
            for raising in [true, false] {
                let next = if raising {
                    raise(datum, &path, i, 1)?
                } else {
                    lower(datum, &path, i, 1)?
                };
                let Some(mut q) = next else { continue };
                if classical {
                    q = q.without_delta();
                }
                let u = match ids.get(&q) {
                    Some(&u) => u,
                    None => {
                        let u = labels.len();
                        if u >= cap {
                            return Err(Error::CapExceeded { visited: u, cap });
                        }
                        ids.insert(q.clone(), u);
                        labels.push(q);
                        f_edges.push(BTreeMap::new());
                        e_edges.push(BTreeMap::new());
                        queue.push_back(u);
                        u
                    }
                };
                if raising {
                    e_edges[v].insert(i, u);
                } else {
                    f_edges[v].insert(i, u);
                }
            }
        }
    }
    let mut wt = Vec::with_capacity(labels.len());
    let mut eps_v = Vec::with_capacity(labels.len());
    let mut phi_v = Vec::with_capacity(labels.len());
    for p in &labels {
        wt.push(p.endpoint());
        let mut e_map = BTreeMap::new();
        let mut p_map = BTreeMap::new();
        for &i in &nodes {
            e_map.insert(i, epsilon(datum, p, i)?);
            p_map.insert(i, phi(datum, p, i)?);
        }
        eps_v.push(e_map);
        phi_v.push(p_map);
    }
    Ok(CrystalGraph {
        datum: datum.clone(),
        classical,
        labels: labels.into_iter().map(NodeLabel::Path).collect(),
        wt,
        eps: eps_v,
        phi: phi_v,
        f_edges,
        e_edges,
    })
}

impl CrystalGraph {
    /// The crystal of all paths obtained from the straight path to `lambda`,
    /// a dominant integral weight, by the root operators.
    pub fn generate(datum: &RootDatum, lambda: &Weight, cap: usize) -> Result<CrystalGraph> {
        if !lambda.is_dominant_integral() {
            return Err(Error::Domain(format!(
                "highest weight {} is not dominant integral",
                lambda
            )));
        }
        for &i in lambda.lambda_coords().keys() {
            if !datum.index_set().contains(&i) {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    cartan_type: datum.cartan_type().to_string(),
                });
            }
        }
        generate_from(datum, Path::straight(lambda.clone()), false, cap)
    }

    /// The one-node crystal of the constant path.
    pub fn trivial(datum: &RootDatum, classical: bool) -> CrystalGraph {
        let stats: BTreeMap<usize, u64> = datum.index_set().iter().map(|&i| (i, 0)).collect();
        CrystalGraph {
            datum: datum.clone(),
            classical,
            labels: vec![NodeLabel::Path(Path::trivial())],
            wt: vec![Weight::zero()],
            eps: vec![stats.clone()],
            phi: vec![stats],
            f_edges: vec![BTreeMap::new()],
            e_edges: vec![BTreeMap::new()],
        }
    }

    /// Tensor product: nodes are pairs `(a, b)` in lexicographic order and
    /// the operators act by the signature rule, lowering on the left factor
    /// exactly when `phi(left) > eps(right)` and raising on the left exactly
    /// when `phi(left) >= eps(right)`.
    pub fn tensor(a: &CrystalGraph, b: &CrystalGraph) -> Result<CrystalGraph> {
        if a.datum != b.datum || a.classical != b.classical {
            return Err(Error::IndexSetMismatch(
                a.datum.cartan_type().to_string(),
                b.datum.cartan_type().to_string(),
            ));
        }
        let datum = a.datum.clone();
        let nodes: Vec<usize> = datum.index_set().to_vec();
        let nb = b.node_count();
        let total = a.node_count() * nb;
        let mut labels = Vec::with_capacity(total);
        let mut wt = Vec::with_capacity(total);
        let mut eps = Vec::with_capacity(total);
        let mut phi = Vec::with_capacity(total);
        let mut f_edges = vec![BTreeMap::new(); total];
        let mut e_edges = vec![BTreeMap::new(); total];
        let missing = || Error::Domain("tensor factor violates the crystal axioms".into());
        for va in 0..a.node_count() {
            for vb in 0..nb {
                let v = va * nb + vb;
                labels.push(NodeLabel::Pair(va, vb));
                wt.push(a.wt[va].add(&b.wt[vb]));
                let mut e_map = BTreeMap::new();
                let mut p_map = BTreeMap::new();
                for &i in &nodes {
                    let (e1, p1) = (a.eps[va][&i], a.phi[va][&i]);
                    let (e2, p2) = (b.eps[vb][&i], b.phi[vb][&i]);
                    e_map.insert(i, e1 + e2.saturating_sub(p1));
                    p_map.insert(i, p2 + p1.saturating_sub(e2));
                    if p1 > e2 {
                        // operators act on the left factor
                        if p1 > 0 {
                            let fa = a.f_edges[va].get(&i).ok_or_else(missing)?;
                            f_edges[v].insert(i, fa * nb + vb);
                        }
                        if e1 > 0 {
                            let ea = a.e_edges[va].get(&i).ok_or_else(missing)?;
                            e_edges[v].insert(i, ea * nb + vb);
                        }
                    } else {
                        // lowering acts on the right factor
                        if p2 > 0 {
                            let fb = b.f_edges[vb].get(&i).ok_or_else(missing)?;
                            f_edges[v].insert(i, va * nb + fb);
                        }
                        if p1 == e2 && e1 > 0 {
                            // raising still acts on the left at the boundary
                            let ea = a.e_edges[va].get(&i).ok_or_else(missing)?;
                            e_edges[v].insert(i, ea * nb + vb);
                        } else if p1 < e2 && e2 > 0 {
                            let eb = b.e_edges[vb].get(&i).ok_or_else(missing)?;
                            e_edges[v].insert(i, va * nb + eb);
                        }
                    }
                }
                eps.push(e_map);
                phi.push(p_map);
            }
        }
        Ok(CrystalGraph {
            datum,
            classical: a.classical,
            labels,
            wt,
            eps,
            phi,
            f_edges,
            e_edges,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn is_classical(&self) -> bool {
        self.classical
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of lowering edges (raising edges are their inverses).
    pub fn edge_count(&self) -> usize {
        self.f_edges.iter().map(|m| m.len()).sum()
    }

    pub fn label(&self, v: usize) -> &NodeLabel {
        &self.labels[v]
    }

    pub fn weight(&self, v: usize) -> &Weight {
        &self.wt[v]
    }

    pub fn eps(&self, v: usize, i: usize) -> Option<u64> {
        self.eps.get(v).and_then(|m| m.get(&i)).copied()
    }

    pub fn phi(&self, v: usize, i: usize) -> Option<u64> {
        self.phi.get(v).and_then(|m| m.get(&i)).copied()
    }

    pub fn f(&self, v: usize, i: usize) -> Option<usize> {
        self.f_edges.get(v).and_then(|m| m.get(&i)).copied()
    }

    pub fn e(&self, v: usize, i: usize) -> Option<usize> {
        self.e_edges.get(v).and_then(|m| m.get(&i)).copied()
    }

    /// Nodes annihilated by every raising operator.
    pub fn highest_weight_nodes(&self) -> Vec<usize> {
        (0..self.node_count())
            .filter(|&v| self.eps[v].values().all(|&e| e == 0))
            .collect()
    }

    /// Verify the axioms of a seminormal crystal: statistics match the
    /// weight pairings, edges exist exactly when the statistics allow,
    /// raising and lowering edges are mutually inverse, and every edge
    /// shifts the weight by the corresponding simple root and the
    /// statistics by one.
    pub fn check_axioms(&self) -> Report {
        let mut report = Report::pass("crystal-axioms")
            .with_param("type", self.datum.cartan_type())
            .with_param("level", level_str(self.classical))
            .with_size("nodes", self.node_count() as u64)
            .with_size("edges", self.edge_count() as u64);
        let fail = |v: usize, i: usize, what: &str, lhs: String, rhs: String, report: &Report| {
            Report::fail(
                "crystal-axioms",
                Counterexample {
                    node: format!("node {} = {}", v, self.labels[v]),
                    index: Some(i),
                    lhs: format!("{}: {}", what, lhs),
                    rhs,
                },
            )
            .with_params_from(report)
        };
        for v in 0..self.node_count() {
            for &i in self.datum.index_set() {
                let (Some(ev), Some(pv)) = (self.eps(v, i), self.phi(v, i)) else {
                    return fail(
                        v,
                        i,
                        "statistics",
                        "missing".into(),
                        "defined for every color".into(),
                        &report,
                    );
                };
                let pairing = match self.datum.pair(i, &self.wt[v]) {
                    Ok(p) => p,
                    Err(e) => return fail(v, i, "pairing", e.to_string(), String::new(), &report),
                };
                let diff = crate::rat(pv as i64) - crate::rat(ev as i64);
                if diff != pairing {
                    return fail(
                        v,
                        i,
                        "phi - eps",
                        diff.to_string(),
                        format!("weight pairing {}", pairing),
                        &report,
                    );
                }
                if (self.f(v, i).is_some()) != (pv > 0) {
                    return fail(
                        v,
                        i,
                        "lowering edge",
                        format!("present: {}", self.f(v, i).is_some()),
                        format!("phi = {}", pv),
                        &report,
                    );
                }
                if (self.e(v, i).is_some()) != (ev > 0) {
                    return fail(
                        v,
                        i,
                        "raising edge",
                        format!("present: {}", self.e(v, i).is_some()),
                        format!("eps = {}", ev),
                        &report,
                    );
                }
                if let Some(u) = self.f(v, i) {
                    if self.e(u, i) != Some(v) {
                        return fail(
                            v,
                            i,
                            "inverse edge",
                            format!("e({}) = {:?}", u, self.e(u, i)),
                            format!("{}", v),
                            &report,
                        );
                    }
                    if self.eps(u, i) != Some(ev + 1) || self.phi(u, i) != Some(pv - 1) {
                        return fail(
                            v,
                            i,
                            "statistics shift",
                            format!("({:?}, {:?})", self.eps(u, i), self.phi(u, i)),
                            format!("({}, {})", ev + 1, pv - 1),
                            &report,
                        );
                    }
                    let root = match self.root_for_edges(i) {
                        Ok(r) => r,
                        Err(e) => return fail(v, i, "root", e.to_string(), String::new(), &report),
                    };
                    let expect = self.wt[v].sub(&root);
                    if self.wt[u] != expect {
                        return fail(
                            v,
                            i,
                            "weight shift",
                            self.wt[u].to_string(),
                            expect.to_string(),
                            &report,
                        );
                    }
                }
                if let Some(u) = self.e(v, i) {
                    if self.f(u, i) != Some(v) {
                        return fail(
                            v,
                            i,
                            "inverse edge",
                            format!("f({}) = {:?}", u, self.f(u, i)),
                            format!("{}", v),
                            &report,
                        );
                    }
                }
            }
        }
        report = report.with_size(
            "highest-weight-nodes",
            self.highest_weight_nodes().len() as u64,
        );
        report
    }

    fn root_for_edges(&self, i: usize) -> Result<Weight> {
        let alpha = self.datum.simple_root(i)?;
        Ok(if self.classical {
            alpha.without_delta()
        } else {
            alpha
        })
    }

    /// Graphviz rendering with one color per node index.
    pub fn export_dot(&self) -> String {
        const PALETTE: [&str; 10] = [
            "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999",
            "#dede00", "#00ced1",
        ];
        let mut out = String::new();
        out.push_str("digraph crystal {\n");
        out.push_str("  rankdir=TB;\n");
        out.push_str("  node [shape=box, fontsize=10];\n");
        for v in 0..self.node_count() {
            out.push_str(&format!("  {} [label=\"{}\"];\n", v, self.wt[v]));
        }
        for v in 0..self.node_count() {
            for (&i, &u) in &self.f_edges[v] {
                out.push_str(&format!(
                    "  {} -> {} [label=\"{}\", color=\"{}\"];\n",
                    v,
                    u,
                    i,
                    PALETTE[i % PALETTE.len()]
                ));
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn export_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = (0..self.node_count())
            .map(|v| {
                let label = match &self.labels[v] {
                    NodeLabel::Path(p) => serde_json::json!({ "path": p.to_json() }),
                    NodeLabel::Pair(a, b) => serde_json::json!({ "pair": [a, b] }),
                };
                let stats = |m: &BTreeMap<usize, u64>| {
                    let mut obj = serde_json::Map::new();
                    for (i, k) in m {
                        obj.insert(i.to_string(), serde_json::json!(k));
                    }
                    serde_json::Value::Object(obj)
                };
                serde_json::json!({
                    "id": v,
                    "label": label,
                    "wt": self.wt[v].to_json(),
                    "eps": stats(&self.eps[v]),
                    "phi": stats(&self.phi[v]),
                })
            })
            .collect();
        let mut edges = Vec::new();
        for v in 0..self.node_count() {
            for (&i, &u) in &self.f_edges[v] {
                edges.push(serde_json::json!({ "src": v, "dst": u, "color": i }));
            }
        }
        serde_json::json!({
            "cartan_type": self.datum.cartan_type().to_string(),
            "level": level_str(self.classical),
            "nodes": nodes,
            "edges": edges,
        })
    }

    pub fn import_json(v: &serde_json::Value) -> Result<CrystalGraph> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("crystal graph must be an object".into()))?;
        let type_name = obj
            .get("cartan_type")
            .and_then(|t| t.as_str())
            .ok_or_else(|| Error::Parse("missing cartan_type".into()))?;
        let datum = RootDatum::from_name(type_name)?;
        let classical = match obj.get("level").and_then(|l| l.as_str()) {
            Some("full") => false,
            Some("classical") => true,
            _ => {
                return Err(Error::Parse(
                    "level must be \"full\" or \"classical\"".into(),
                ))
            }
        };
        let nodes = obj
            .get("nodes")
            .and_then(|n| n.as_array())
            .ok_or_else(|| Error::Parse("missing nodes array".into()))?;
        let mut labels = Vec::with_capacity(nodes.len());
        let mut wt = Vec::with_capacity(nodes.len());
        let mut eps = Vec::with_capacity(nodes.len());
        let mut phi = Vec::with_capacity(nodes.len());
        for (expect, node) in nodes.iter().enumerate() {
            let nobj = node
                .as_object()
                .ok_or_else(|| Error::Parse("node must be an object".into()))?;
            let id = nobj.get("id").and_then(|i| i.as_u64());
            if id != Some(expect as u64) {
                return Err(Error::Parse(format!(
                    "node ids must be 0..n in order, found {:?}",
                    id
                )));
            }
            let label = nobj
                .get("label")
                .and_then(|l| l.as_object())
                .ok_or_else(|| Error::Parse("node missing label".into()))?;
            if let Some(p) = label.get("path") {
                labels.push(NodeLabel::Path(Path::from_json(p)?));
            } else if let Some(pair) = label.get("pair").and_then(|p| p.as_array()) {
                let get = |k: usize| {
                    pair.get(k)
                        .and_then(|x| x.as_u64())
                        .map(|x| x as usize)
                        .ok_or_else(|| Error::Parse("pair label needs two node ids".into()))
                };
                labels.push(NodeLabel::Pair(get(0)?, get(1)?));
            } else {
                return Err(Error::Parse("label must hold a path or a pair".into()));
            }
            wt.push(Weight::from_json(
                nobj.get("wt")
                    .ok_or_else(|| Error::Parse("node missing wt".into()))?,
            )?);
            let stats = |key: &str| -> Result<BTreeMap<usize, u64>> {
                let m = nobj
                    .get(key)
                    .and_then(|s| s.as_object())
                    .ok_or_else(|| Error::Parse(format!("node missing {}", key)))?;
                let mut out = BTreeMap::new();
                for (k, val) in m {
                    let i: usize = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad node index {:?}", k)))?;
                    let c = val
                        .as_u64()
                        .ok_or_else(|| Error::Parse("statistic must be an integer".into()))?;
                    out.insert(i, c);
                }
                for &i in datum.index_set() {
                    if !out.contains_key(&i) {
                        return Err(Error::Parse(format!("{} missing color {}", key, i)));
                    }
                }
                Ok(out)
            };
            eps.push(stats("eps")?);
            phi.push(stats("phi")?);
        }
        let mut f_edges = vec![BTreeMap::new(); nodes.len()];
        let mut e_edges = vec![BTreeMap::new(); nodes.len()];
        let edges = obj
            .get("edges")
            .and_then(|e| e.as_array())
            .ok_or_else(|| Error::Parse("missing edges array".into()))?;
        for edge in edges {
            let get = |key: &str| {
                edge.get(key)
                    .and_then(|x| x.as_u64())
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::Parse(format!("edge missing {}", key)))
            };
            let (src, dst, color) = (get("src")?, get("dst")?, get("color")?);
            if src >= nodes.len() || dst >= nodes.len() {
                return Err(Error::Parse(format!(
                    "edge {} -> {} out of range",
                    src, dst
                )));
            }
            if !datum.index_set().contains(&color) {
                return Err(Error::Parse(format!("edge color {} not a node", color)));
            }
            if f_edges[src].insert(color, dst).is_some() {
                return Err(Error::Parse(format!(
                    "duplicate edge color {} at node {}",
                    color, src
                )));
            }
            if e_edges[dst].insert(color, src).is_some() {
                return Err(Error::Parse(format!(
                    "two edges of color {} into node {}",
                    color, dst
                )));
            }
        }
        Ok(CrystalGraph {
            datum,
            classical,
            labels,
            wt,
            eps,
            phi,
            f_edges,
            e_edges,
        })
    }
}

fn level_str(classical: bool) -> &'static str {
    if classical {
        "classical"
    } else {
        "full"
    }
}

impl Report {
    fn with_params_from(mut self, other: &Report) -> Report {
        for (k, v) in &other.params {
            self.params.insert(k.clone(), v.clone());
        }
        for (k, v) in &other.sizes {
            self.sizes.insert(k.clone(), *v);
        }
        self
    }
}

/// Data attached to every node that any isomorphism must preserve.
type NodeKey = (Weight, Vec<u64>, Vec<u64>);

fn node_key(g: &CrystalGraph, v: usize) -> NodeKey {
    let nodes = g.datum().index_set();
    (
        g.weight(v).clone(),
        nodes.iter().map(|i| g.eps[v][i]).collect(),
        nodes.iter().map(|i| g.phi[v][i]).collect(),
    )
}

/// Stable colors under neighborhood refinement, shared between two graphs.
fn refined_colors(a: &CrystalGraph, b: &CrystalGraph) -> (Vec<u32>, Vec<u32>) {
    let mut palette: BTreeMap<NodeKey, u32> = BTreeMap::new();
    let color_of = |key: NodeKey, palette: &mut BTreeMap<NodeKey, u32>| {
        let next = palette.len() as u32;
        *palette.entry(key).or_insert(next)
    };
    let mut ca: Vec<u32> = (0..a.node_count())
        .map(|v| color_of(node_key(a, v), &mut palette))
        .collect();
    let mut cb: Vec<u32> = (0..b.node_count())
        .map(|v| color_of(node_key(b, v), &mut palette))
        .collect();
    let nodes: Vec<usize> = a.datum().index_set().to_vec();
    loop {
        let mut next: BTreeMap<(u32, Vec<(usize, i64, i64)>), u32> = BTreeMap::new();
        let sig = |g: &CrystalGraph, colors: &[u32], v: usize| {
            let nb: Vec<(usize, i64, i64)> = nodes
                .iter()
                .map(|&i| {
                    let fc = g.f(v, i).map_or(-1, |u| colors[u] as i64);
                    let ec = g.e(v, i).map_or(-1, |u| colors[u] as i64);
                    (i, fc, ec)
                })
                .collect();
            (colors[v], nb)
        };
        let assign =
            |key: (u32, Vec<(usize, i64, i64)>),
             next: &mut BTreeMap<(u32, Vec<(usize, i64, i64)>), u32>| {
                let n = next.len() as u32;
                *next.entry(key).or_insert(n)
            };
        let na: Vec<u32> = (0..a.node_count())
            .map(|v| assign(sig(a, &ca, v), &mut next))
            .collect();
        let nb: Vec<u32> = (0..b.node_count())
            .map(|v| assign(sig(b, &cb, v), &mut next))
            .collect();
        let old_classes = ca
            .iter()
            .chain(cb.iter())
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        let new_classes = next.len();
        ca = na;
        cb = nb;
        if new_classes == old_classes {
            return (ca, cb);
        }
    }
}

fn components(g: &CrystalGraph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for m in [&g.f_edges[v], &g.e_edges[v]] {
                for &u in m.values() {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Match one component of `a` onto one of `b`, anchored at a fixed node
/// pair, by following edges; fills `map` and returns the matched nodes.
fn propagate(
    a: &CrystalGraph,
    b: &CrystalGraph,
    ca: &[u32],
    cb: &[u32],
    anchor_a: usize,
    anchor_b: usize,
    map: &mut [Option<usize>],
) -> Option<Vec<usize>> {
    if ca[anchor_a] != cb[anchor_b] {
        return None;
    }
    let nodes: Vec<usize> = a.datum().index_set().to_vec();
    let mut matched = vec![(anchor_a, anchor_b)];
    let mut placed = vec![anchor_a];
    map[anchor_a] = Some(anchor_b);
    let mut k = 0;
    while k < matched.len() {
        let (x, y) = matched[k];
        k += 1;
        for &i in &nodes {
            for dir in [0, 1] {
                let (nx, ny) = if dir == 0 {
                    (a.f(x, i), b.f(y, i))
                } else {
                    (a.e(x, i), b.e(y, i))
                };
                match (nx, ny) {
                    (None, None) => {}
                    (Some(u), Some(w)) => match map[u] {
                        Some(prev) => {
                            if prev != w {
                                for &p in &placed {
                                    map[p] = None;
                                }
                                return None;
                            }
                        }
                        None => {
                            if ca[u] != cb[w] {
                                for &p in &placed {
                                    map[p] = None;
                                }
                                return None;
                            }
                            map[u] = Some(w);
                            placed.push(u);
                            matched.push((u, w));
                        }
                    },
                    _ => {
                        for &p in &placed {
                            map[p] = None;
                        }
                        return None;
                    }
                }
            }
        }
    }
    Some(placed)
}

/// Color-preserving isomorphism test.  Returns the node map from `a` to `b`
/// if one exists; isomorphisms must preserve weights, statistics, and all
/// colored edges.
pub fn is_isomorphic(a: &CrystalGraph, b: &CrystalGraph) -> Option<Vec<usize>> {
    if a.datum() != b.datum()
        || a.is_classical() != b.is_classical()
        || a.node_count() != b.node_count()
        || a.edge_count() != b.edge_count()
    {
        return None;
    }
    let (ca, cb) = refined_colors(a, b);
    let mut hist_a: BTreeMap<u32, usize> = BTreeMap::new();
    let mut hist_b: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in &ca {
        *hist_a.entry(c).or_insert(0) += 1;
    }
    for &c in &cb {
        *hist_b.entry(c).or_insert(0) += 1;
    }
    if hist_a != hist_b {
        return None;
    }
    let comps_a = components(a);
    let comps_b = components(b);
    if comps_a.len() != comps_b.len() {
        return None;
    }
    let multiset = |comp: &[usize], colors: &[u32]| {
        let mut m: Vec<u32> = comp.iter().map(|&v| colors[v]).collect();
        m.sort_unstable();
        m
    };
    let mut map: Vec<Option<usize>> = vec![None; a.node_count()];
    let mut used_b = vec![false; comps_b.len()];
    for comp_a in &comps_a {
        let key_a = multiset(comp_a, &ca);
        // the rarest color in the component pins the anchor
        let anchor = *comp_a
            .iter()
            .min_by_key(|&&v| (hist_a[&ca[v]], v))
            .expect("components are nonempty");
        let mut found = false;
        'candidates: for (kb, comp_b) in comps_b.iter().enumerate() {
            if used_b[kb] || multiset(comp_b, &cb) != key_a {
                continue;
            }
            for &cand in comp_b.iter().filter(|&&w| cb[w] == ca[anchor]) {
                if map.iter().any(|m| m == &Some(cand)) {
                    continue;
                }
                if let Some(placed) = propagate(a, b, &ca, &cb, anchor, cand, &mut map) {
                    if placed.len() == comp_a.len() {
                        used_b[kb] = true;
                        found = true;
                        break 'candidates;
                    }
                    for &p in &placed {
                        map[p] = None;
                    }
                }
            }
        }
        if !found {
            return None;
        }
    }
    let map: Vec<usize> = map.into_iter().map(|m| m.expect("total map")).collect();
    // certify the map before returning it
    let nodes: Vec<usize> = a.datum().index_set().to_vec();
    let mut image_seen = vec![false; b.node_count()];
    for v in 0..a.node_count() {
        let w = map[v];
        if image_seen[w] {
            return None;
        }
        image_seen[w] = true;
        if node_key(a, v) != node_key(b, w) {
            return None;
        }
        for &i in &nodes {
            if a.f(v, i).map(|u| map[u]) != b.f(w, i) {
                return None;
            }
            if a.e(v, i).map(|u| map[u]) != b.e(w, i) {
                return None;
            }
        }
    }
    Some(map)
}
