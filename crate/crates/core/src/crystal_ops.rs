//! Root operators on paths.
//!
//! For a path `pi` and a node i, write H for the scalar height function
//! `t -> <alpha_i^vee, pi(t)>` and m for its minimum (m <= 0 always, since
//! H(0) = 0).  A single raising step acts on the portion of the path between
//! the last time H equals m + 1 and the first time H attains m: stretches
//! where the height descends below its running minimum are reflected by s_i,
//! everything else is translated.  A lowering step is the mirror image,
//! acting between the last minimum and the first return to m + 1.
//!
//! Raising by amount k is defined when m <= -k and is the k-fold iteration
//! of the single step; it adds `k alpha_i` to the endpoint.  On paths all of
//! whose local height minima are integers (every path generated from a
//! straight dominant path is of this kind), raising and lowering are
//! mutually inverse, a raising step lifts the minimum by exactly one, and
//! the statistics below count exactly how often each operator applies.
//! The operators are still well defined outside that class, but those
//! identities can genuinely fail there.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::paths::{pairing_prefixes, Path};
use crate::root_data::{RootDatum, Weight};
use crate::{rat, Error, Rational, Result};

struct Heights {
    /// Height at each segment breakpoint; length is segments + 1.
    h: Vec<Rational>,
    min: Rational,
    first_argmin: usize,
    last_argmin: usize,
}

fn heights(datum: &RootDatum, path: &Path, i: usize) -> Result<Heights> {
    let h = pairing_prefixes(datum, path, i)?;
    let mut min = h[0].clone();
    let (mut first, mut last) = (0, 0);
    for (k, v) in h.iter().enumerate().skip(1) {
        if v < &min {
            min = v.clone();
            first = k;
            last = k;
        } else if v == &min {
            last = k;
        }
    }
    Ok(Heights {
        h,
        min,
        first_argmin: first,
        last_argmin: last,
    })
}

fn amount(k: u32) -> Result<Rational> {
    if k == 0 {
        return Err(Error::Domain("operator amount must be positive".into()));
    }
    Ok(rat(k as i64))
}

/// A straight piece of the moved region: its displacement and the heights at
/// its two ends.
struct Atom {
    w: Weight,
    start: Rational,
    end: Rational,
}

/// `w + (start - end) alpha`, the image of a displacement under s_i.
fn reflect(atom_w: &Weight, start: &Rational, end: &Rational, alpha: &Weight) -> Weight {
    let mut r = atom_w.clone();
    r.add_scaled(alpha, &(start - end));
    r
}

/// One raising step, on a precomputed height profile.
fn raise_once(datum: &RootDatum, path: &Path, i: usize, hs: &Heights) -> Result<Path> {
    let alpha = datum.simple_root(i)?;
    let level = &hs.min + Rational::one();
    let j1 = hs.first_argmin;
    // last breakpoint at or before j1 where the height is still at least the
    // level; the region starts at the crossing after it
    let mut j0 = j1;
    while hs.h[j0] < level {
        j0 -= 1;
    }
    let segs = path.segments();
    let mut out: Vec<Weight> = segs[..j0].to_vec();
    let mut atoms: Vec<Atom> = Vec::new();
    if hs.h[j0] > level {
        // the region starts inside segment j0: split where H crosses down
        let f = (&hs.h[j0] - &level) / (&hs.h[j0] - &hs.h[j0 + 1]);
        out.push(segs[j0].scale(&f));
        atoms.push(Atom {
            w: segs[j0].scale(&(Rational::one() - &f)),
            start: level.clone(),
            end: hs.h[j0 + 1].clone(),
        });
    } else {
        atoms.push(Atom {
            w: segs[j0].clone(),
            start: hs.h[j0].clone(),
            end: hs.h[j0 + 1].clone(),
        });
    }
    for j in j0 + 1..j1 {
        atoms.push(Atom {
            w: segs[j].clone(),
            start: hs.h[j].clone(),
            end: hs.h[j + 1].clone(),
        });
    }
    // left to right, reflecting descent below the running minimum
    let mut running = level;
    for atom in atoms {
        if atom.end < atom.start {
            if atom.start <= running {
                // entirely fresh descent
                out.push(reflect(&atom.w, &atom.start, &atom.end, &alpha));
            } else if atom.end >= running {
                // falls back from an excursion without a new minimum
                out.push(atom.w);
            } else {
                // crosses the running minimum: split there
                let f = (&atom.start - &running) / (&atom.start - &atom.end);
                out.push(atom.w.scale(&f));
                let fresh = atom.w.scale(&(Rational::one() - &f));
                out.push(reflect(&fresh, &running, &atom.end, &alpha));
            }
            if atom.end < running {
                running = atom.end;
            }
        } else {
            out.push(atom.w);
        }
    }
    out.extend_from_slice(&segs[j1..]);
    Ok(Path::from_segments(out))
}

/// One lowering step, on a precomputed height profile.
fn lower_once(datum: &RootDatum, path: &Path, i: usize, hs: &Heights) -> Result<Path> {
    let alpha = datum.simple_root(i)?;
    let level = &hs.min + Rational::one();
    let j0 = hs.last_argmin;
    // first breakpoint at or after the region's end
    let mut jj = j0;
    while hs.h[jj] < level {
        jj += 1;
    }
    let segs = path.segments();
    let mut out: Vec<Weight> = segs[..j0].to_vec();
    let mut atoms: Vec<Atom> = Vec::new();
    for j in j0..jj - 1 {
        atoms.push(Atom {
            w: segs[j].clone(),
            start: hs.h[j].clone(),
            end: hs.h[j + 1].clone(),
        });
    }
    let mut tail: Vec<Weight> = Vec::new();
    let cross = jj - 1;
    if hs.h[jj] > level {
        // the region ends inside segment jj - 1: split where H crosses up
        let f = (&level - &hs.h[cross]) / (&hs.h[jj] - &hs.h[cross]);
        atoms.push(Atom {
            w: segs[cross].scale(&f),
            start: hs.h[cross].clone(),
            end: level.clone(),
        });
        tail.push(segs[cross].scale(&(Rational::one() - &f)));
    } else {
        atoms.push(Atom {
            w: segs[cross].clone(),
            start: hs.h[cross].clone(),
            end: hs.h[jj].clone(),
        });
    }
    // right to left, reflecting ascent that ends at the running minimum
    let mut running = level;
    let mut body: Vec<Weight> = Vec::with_capacity(atoms.len() + 1);
    for atom in atoms.into_iter().rev() {
        if atom.end > atom.start {
            if atom.end <= running {
                // entirely fresh ascent, seen from the right
                body.push(reflect(&atom.w, &atom.start, &atom.end, &alpha));
            } else if atom.start >= running {
                body.push(atom.w);
            } else {
                // crosses the running minimum: split there
                let f = (&running - &atom.start) / (&atom.end - &atom.start);
                let fresh = atom.w.scale(&f);
                let upper = atom.w.scale(&(Rational::one() - &f));
                // forward order is the reflected lower piece, then the upper
                body.push(upper);
                body.push(reflect(&fresh, &atom.start, &running, &alpha));
            }
            if atom.start < running {
                running = atom.start;
            }
        } else {
            body.push(atom.w);
        }
    }
    body.reverse();
    out.extend(body);
    out.extend(tail);
    out.extend_from_slice(&segs[jj..]);
    Ok(Path::from_segments(out))
}

/// The raising root operator applied with amount k: defined exactly when the
/// height minimum is at most -k, in which case it is the k-fold single step
/// and adds `k alpha_i` to the endpoint.
pub fn raise(datum: &RootDatum, path: &Path, i: usize, k: u32) -> Result<Option<Path>> {
    let k_rat = amount(k)?;
    let hs = heights(datum, path, i)?;
    if hs.min > -k_rat {
        return Ok(None);
    }
    let mut cur = raise_once(datum, path, i, &hs)?;
    for _ in 1..k {
        // one step lifts the minimum by at most one, so every intermediate
        // minimum stays at most -1 and the step below is always defined
        let hs = heights(datum, &cur, i)?;
        debug_assert!(hs.min <= -Rational::one());
        cur = raise_once(datum, &cur, i, &hs)?;
    }
    debug_assert_eq!(cur.endpoint(), {
        let mut e = path.endpoint();
        e.add_scaled(&datum.simple_root(i)?, &rat(k as i64));
        e
    });
    Ok(Some(cur))
}

/// The lowering root operator applied with amount k: defined exactly when
/// `H(1) - m >= k`, in which case it is the k-fold single step and subtracts
/// `k alpha_i` from the endpoint.
pub fn lower(datum: &RootDatum, path: &Path, i: usize, k: u32) -> Result<Option<Path>> {
    let k_rat = amount(k)?;
    let hs = heights(datum, path, i)?;
    if &hs.h[hs.h.len() - 1] - &hs.min < k_rat {
        return Ok(None);
    }
    let mut cur = lower_once(datum, path, i, &hs)?;
    for _ in 1..k {
        let hs = heights(datum, &cur, i)?;
        debug_assert!(&hs.h[hs.h.len() - 1] - &hs.min >= Rational::one());
        cur = lower_once(datum, &cur, i, &hs)?;
    }
    debug_assert_eq!(cur.endpoint(), {
        let mut e = path.endpoint();
        e.add_scaled(&datum.simple_root(i)?, &-rat(k as i64));
        e
    });
    Ok(Some(cur))
}

fn floor_to_u64(x: Rational) -> u64 {
    debug_assert!(!x.is_negative());
    x.floor()
        .to_integer()
        .to_u64()
        .expect("path statistic fits in u64")
}

/// Largest k such that raising by k is defined: `floor(-m)`.
pub fn epsilon(datum: &RootDatum, path: &Path, i: usize) -> Result<u64> {
    let hs = heights(datum, path, i)?;
    Ok(floor_to_u64(-hs.min))
}

/// Largest k such that lowering by k is defined: `floor(H(1) - m)`.
pub fn phi(datum: &RootDatum, path: &Path, i: usize) -> Result<u64> {
    let hs = heights(datum, path, i)?;
    let last = hs.h[hs.h.len() - 1].clone();
    Ok(floor_to_u64(last - hs.min))
}

/// Monotonicity kind of one piece of a height function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieceKind {
    Falling,
    Level,
    Rising,
}

/// The coarsest subdivision of `[0, 1]` such that the height function for
/// node i is monotone of a single kind on each piece (adjacent pieces always
/// have different kinds).  Times refer to the uniform parametrization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    /// Cut times, strictly increasing from 0 to 1; one more than `kinds`.
    pub cuts: Vec<Rational>,
    pub kinds: Vec<PieceKind>,
}

pub fn subdivision(datum: &RootDatum, path: &Path, i: usize) -> Result<Subdivision> {
    let hs = heights(datum, path, i)?;
    let n = path.segments().len();
    if n == 0 {
        return Ok(Subdivision {
            cuts: vec![Rational::zero(), Rational::one()],
            kinds: vec![PieceKind::Level],
        });
    }
    let time = |k: usize| Rational::new((k as i64).into(), (n as i64).into());
    let mut cuts = vec![Rational::zero()];
    let mut kinds: Vec<PieceKind> = Vec::new();
    for j in 0..n {
        let kind = match hs.h[j + 1].cmp(&hs.h[j]) {
            std::cmp::Ordering::Less => PieceKind::Falling,
            std::cmp::Ordering::Equal => PieceKind::Level,
            std::cmp::Ordering::Greater => PieceKind::Rising,
        };
        if kinds.last() == Some(&kind) {
            *cuts.last_mut().unwrap() = time(j + 1);
        } else {
            kinds.push(kind);
            cuts.push(time(j + 1));
        }
    }
    Ok(Subdivision { cuts, kinds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn datum(name: &str) -> RootDatum {
        RootDatum::from_name(name).unwrap()
    }

    fn w(coords: &[(usize, i64)]) -> Weight {
        Weight::from_coords(coords.iter().map(|&(i, c)| (i, rat(c))), Rational::zero())
    }

    fn wq(coords: &[(usize, i64, i64)]) -> Weight {
        Weight::from_coords(
            coords
                .iter()
                .map(|&(i, p, q)| (i, Rational::new(p.into(), q.into()))),
            Rational::zero(),
        )
    }

    #[test]
    fn lowering_golden_values() {
        let c2 = datum("C2");
        let start = Path::straight(w(&[(1, 3), (2, 1)]));
        // a single straight reflected piece
        let f2 = lower(&c2, &start, 2, 1).unwrap().unwrap();
        assert_eq!(f2, Path::straight(w(&[(1, 5), (2, -1)])));
        // a genuine corner: one third reflected, two thirds kept
        let f1 = lower(&c2, &start, 1, 1).unwrap().unwrap();
        assert_eq!(
            f1.segments(),
            &[wq(&[(1, -1, 1), (2, 4, 3)]), wq(&[(1, 2, 1), (2, 2, 3)])]
        );
        assert_eq!(f1.endpoint(), w(&[(1, 1), (2, 2)]));
        // the raising operators invert both
        assert_eq!(raise(&c2, &f2, 2, 1).unwrap().unwrap(), start);
        assert_eq!(raise(&c2, &f1, 1, 1).unwrap().unwrap(), start);
        // nothing to raise on a dominant straight path
        assert_eq!(raise(&c2, &start, 1, 1).unwrap(), None);
        assert_eq!(raise(&c2, &start, 2, 1).unwrap(), None);
    }

    #[test]
    fn statistics_golden_values() {
        let c2 = datum("C2");
        let start = Path::straight(w(&[(1, 3), (2, 1)]));
        assert_eq!(epsilon(&c2, &start, 1).unwrap(), 0);
        assert_eq!(epsilon(&c2, &start, 2).unwrap(), 0);
        assert_eq!(phi(&c2, &start, 1).unwrap(), 3);
        assert_eq!(phi(&c2, &start, 2).unwrap(), 1);
    }

    #[test]
    fn full_string_in_rank_one() {
        let a1 = datum("A1");
        let top = Path::straight(w(&[(1, 3)]));
        let mut p = top.clone();
        let mut wts = vec![p.endpoint()];
        while let Some(q) = lower(&a1, &p, 1, 1).unwrap() {
            p = q;
            wts.push(p.endpoint());
        }
        assert_eq!(wts.len(), 4);
        assert_eq!(wts[3], w(&[(1, -3)]));
        assert_eq!(phi(&a1, &top, 1).unwrap(), 3);
        assert_eq!(epsilon(&a1, &p, 1).unwrap(), 3);
        // climb back up
        let mut q = p;
        let mut count = 0;
        while let Some(r) = raise(&a1, &q, 1, 1).unwrap() {
            q = r;
            count += 1;
        }
        assert_eq!(count, 3);
        assert_eq!(q, top);
    }

    #[test]
    fn amount_zero_is_rejected() {
        let a1 = datum("A1");
        let p = Path::straight(w(&[(1, 1)]));
        assert!(raise(&a1, &p, 1, 0).is_err());
        assert!(lower(&a1, &p, 1, 0).is_err());
        assert!(raise(&a1, &p, 7, 1).is_err());
    }

    /// Heights 0, -3/2, -6/5, -2: the final descent crosses the running
    /// minimum in the middle of a segment, so the operator must split there.
    #[test]
    fn descent_crossing_running_minimum_mid_segment() {
        let a1 = datum("A1");
        let p = Path::from_segments(vec![
            wq(&[(1, -3, 2)]),
            wq(&[(1, 3, 10)]),
            wq(&[(1, -4, 5)]),
        ]);
        let alpha = a1.simple_root(1).unwrap();
        let up = raise(&a1, &p, 1, 1).unwrap().unwrap();
        assert_eq!(up.endpoint(), p.endpoint().add(&alpha));
        assert_eq!(epsilon(&a1, &up, 1).unwrap(), 1);
        // the reflected pieces must recombine exactly
        let back = lower(&a1, &up, 1, 1).unwrap().unwrap();
        assert_eq!(back, p);
        // and the mirror case for lowering
        let q = p.dual();
        let down = lower(&a1, &q, 1, 1).unwrap().unwrap();
        assert_eq!(down.endpoint(), q.endpoint().sub(&alpha));
        assert_eq!(raise(&a1, &down, 1, 1).unwrap().unwrap(), q);
    }

    #[test]
    fn subdivision_structure() {
        let a2 = datum("A2");
        // three path corners, but only two height kinds for node 1: the two
        // rising segments are not collinear yet merge into one piece
        let p = Path::from_segments(vec![
            w(&[(1, -1)]),
            w(&[(1, 1), (2, 1)]),
            w(&[(1, 2), (2, -1)]),
        ]);
        assert_eq!(p.segments().len(), 3);
        let s = subdivision(&a2, &p, 1).unwrap();
        assert_eq!(s.kinds, vec![PieceKind::Falling, PieceKind::Rising]);
        assert_eq!(s.cuts.len(), 3);
        assert_eq!(s.cuts[0], rat(0));
        assert_eq!(s.cuts[1], Rational::new(1.into(), 3.into()));
        assert_eq!(s.cuts[2], rat(1));
        // node 2 sees level, rising, falling
        let s2 = subdivision(&a2, &p, 2).unwrap();
        assert_eq!(
            s2.kinds,
            vec![PieceKind::Level, PieceKind::Rising, PieceKind::Falling]
        );
        let t = subdivision(&a2, &Path::trivial(), 1).unwrap();
        assert_eq!(t.kinds, vec![PieceKind::Level]);
    }

    const CASE_TYPES: &[(&str, &[usize])] = &[
        ("A1", &[1]),
        ("A2", &[1, 2]),
        ("C2", &[1, 2]),
        ("G2", &[1, 2]),
    ];

    // random paths with rational coordinates, exercising non-integral minima
    fn arb_path(nodes: &'static [usize]) -> impl Strategy<Value = Path> {
        let seg =
            proptest::collection::vec((-2i64..=2, 1i64..=2), nodes.len()).prop_map(move |cs| {
                Weight::from_coords(
                    nodes
                        .iter()
                        .zip(cs)
                        .map(|(&i, (p, q))| (i, Rational::new(p.into(), q.into()))),
                    Rational::zero(),
                )
            });
        proptest::collection::vec(seg, 1..5).prop_map(Path::from_segments)
    }

    fn arb_case() -> impl Strategy<Value = (RootDatum, Path, usize)> {
        (0..CASE_TYPES.len(), any::<proptest::sample::Index>()).prop_flat_map(|(t, pick)| {
            let (name, nodes) = CASE_TYPES[t];
            let i = *pick.get(nodes);
            (Just(datum(name)), arb_path(nodes), Just(i))
        })
    }

    // paths inside an actual crystal: a random operator word applied to the
    // straight path to a random small dominant weight
    fn arb_crystal_case() -> impl Strategy<Value = (RootDatum, Path, usize)> {
        let word =
            proptest::collection::vec((any::<bool>(), any::<proptest::sample::Index>()), 0..8);
        (
            0..CASE_TYPES.len(),
            proptest::collection::vec(0u8..=2, 2),
            word,
            any::<proptest::sample::Index>(),
        )
            .prop_map(|(t, coords, word, pick)| {
                let (name, nodes) = CASE_TYPES[t];
                let d = datum(name);
                let lam = Weight::from_coords(
                    nodes.iter().zip(coords).map(|(&i, c)| (i, rat(c as i64))),
                    Rational::zero(),
                );
                let mut p = Path::straight(lam);
                for (down, which) in word {
                    let i = *which.get(nodes);
                    let next = if down {
                        lower(&d, &p, i, 1).unwrap()
                    } else {
                        raise(&d, &p, i, 1).unwrap()
                    };
                    if let Some(q) = next {
                        p = q;
                    }
                }
                let i = *pick.get(nodes);
                (d, p, i)
            })
    }

    /// Values of the weak local minima of the height profile, with plateaus
    /// handled by collapsing runs of equal values.
    fn local_minima(datum: &RootDatum, p: &Path, i: usize) -> Vec<Rational> {
        let h = pairing_prefixes(datum, p, i).unwrap();
        let mut runs: Vec<Rational> = Vec::new();
        for v in h {
            if runs.last() != Some(&v) {
                runs.push(v);
            }
        }
        let mut out = Vec::new();
        for (k, v) in runs.iter().enumerate() {
            let left_up = k == 0 || &runs[k - 1] > v;
            let right_up = k + 1 == runs.len() || &runs[k + 1] > v;
            if left_up && right_up {
                out.push(v.clone());
            }
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        // universal properties, valid for arbitrary rational paths

        #[test]
        fn lowering_is_dual_raising((d, p, i) in arb_case()) {
            let via_dual = raise(&d, &p.dual(), i, 1).unwrap().map(|q| q.dual());
            prop_assert_eq!(lower(&d, &p, i, 1).unwrap(), via_dual);
        }

        #[test]
        fn endpoint_moves_by_the_root((d, p, i) in arb_case()) {
            let alpha = d.simple_root(i).unwrap();
            if let Some(up) = raise(&d, &p, i, 2).unwrap() {
                let mut expect = p.endpoint();
                expect.add_scaled(&alpha, &rat(2));
                prop_assert_eq!(up.endpoint(), expect);
            }
            if let Some(down) = lower(&d, &p, i, 1).unwrap() {
                prop_assert_eq!(down.endpoint(), p.endpoint().sub(&alpha));
            }
        }

        #[test]
        fn duality_swaps_statistics((d, p, i) in arb_case()) {
            prop_assert_eq!(
                epsilon(&d, &p.dual(), i).unwrap(),
                phi(&d, &p, i).unwrap()
            );
        }

        #[test]
        fn nullity_matches_statistics((d, p, i) in arb_case()) {
            let eps = epsilon(&d, &p, i).unwrap();
            for k in 1..=3u32 {
                prop_assert_eq!(
                    raise(&d, &p, i, k).unwrap().is_some(),
                    u64::from(k) <= eps
                );
            }
            let ph = phi(&d, &p, i).unwrap();
            for k in 1..=3u32 {
                prop_assert_eq!(
                    lower(&d, &p, i, k).unwrap().is_some(),
                    u64::from(k) <= ph
                );
            }
        }

        #[test]
        fn operators_ignore_parametrization((d, p, i) in arb_case()) {
            // re-subdivide every segment into unequal halves
            let third = Rational::new(1.into(), 3.into());
            let rest = Rational::one() - &third;
            let mut split = Vec::new();
            for seg in p.segments() {
                split.push(seg.scale(&third));
                split.push(seg.scale(&rest));
            }
            let q = Path::from_segments(split);
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(raise(&d, &q, i, 1).unwrap(), raise(&d, &p, i, 1).unwrap());
        }

        #[test]
        fn subdivision_is_coarse((d, p, i) in arb_case()) {
            let s = subdivision(&d, &p, i).unwrap();
            prop_assert_eq!(s.cuts.len(), s.kinds.len() + 1);
            for pair in s.cuts.windows(2) {
                prop_assert!(pair[0] < pair[1]);
            }
            for pair in s.kinds.windows(2) {
                prop_assert!(pair[0] != pair[1]);
            }
            prop_assert_eq!(s.cuts.first().unwrap(), &Rational::zero());
            prop_assert_eq!(s.cuts.last().unwrap(), &Rational::one());
        }

        // crystal-class properties, valid on paths generated from straight
        // dominant paths by the operators

        #[test]
        fn crystal_paths_have_integral_minima((d, p, i) in arb_crystal_case()) {
            for v in local_minima(&d, &p, i) {
                prop_assert!(v.is_integer(), "local minimum {} not integral", v);
            }
        }

        #[test]
        fn raise_and_lower_are_inverse((d, p, i) in arb_crystal_case()) {
            if let Some(up) = raise(&d, &p, i, 1).unwrap() {
                prop_assert_eq!(lower(&d, &up, i, 1).unwrap().unwrap(), p.clone());
            }
            if let Some(down) = lower(&d, &p, i, 1).unwrap() {
                prop_assert_eq!(raise(&d, &down, i, 1).unwrap().unwrap(), p);
            }
        }

        #[test]
        fn statistics_shift_by_one((d, p, i) in arb_crystal_case()) {
            let eps = epsilon(&d, &p, i).unwrap();
            let ph = phi(&d, &p, i).unwrap();
            let pairing = d.pair(i, &p.endpoint()).unwrap();
            // on integral paths the statistics differ by the weight pairing
            prop_assert_eq!(rat(ph as i64) - rat(eps as i64), pairing);
            if let Some(up) = raise(&d, &p, i, 1).unwrap() {
                prop_assert_eq!(epsilon(&d, &up, i).unwrap(), eps - 1);
                prop_assert_eq!(phi(&d, &up, i).unwrap(), ph + 1);
            }
        }

        #[test]
        fn statistics_count_operator_applications((d, p, i) in arb_crystal_case()) {
            let mut q = p.clone();
            let mut count = 0u64;
            while let Some(r) = raise(&d, &q, i, 1).unwrap() {
                q = r;
                count += 1;
                prop_assert!(count < 200);
            }
            prop_assert_eq!(epsilon(&d, &p, i).unwrap(), count);
            let mut q = p.clone();
            let mut count = 0u64;
            while let Some(r) = lower(&d, &q, i, 1).unwrap() {
                q = r;
                count += 1;
                prop_assert!(count < 200);
            }
            prop_assert_eq!(phi(&d, &p, i).unwrap(), count);
        }

        #[test]
        fn repeated_amount_matches_iteration((d, p, i) in arb_crystal_case()) {
            let twice = raise(&d, &p, i, 2).unwrap();
            let iterated = match raise(&d, &p, i, 1).unwrap() {
                Some(q) => raise(&d, &q, i, 1).unwrap(),
                None => None,
            };
            prop_assert_eq!(twice, iterated);
            let twice = lower(&d, &p, i, 2).unwrap();
            let iterated = match lower(&d, &p, i, 1).unwrap() {
                Some(q) => lower(&d, &q, i, 1).unwrap(),
                None => None,
            };
            prop_assert_eq!(twice, iterated);
        }
    }
}
