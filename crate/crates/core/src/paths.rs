//! Piecewise-linear paths in the weight space, up to reparametrization.
//!
//! A path is stored as its sequence of straight displacement segments.  Two
//! parametrizations of the same broken line are identified by a canonical
//! form: zero segments are dropped and consecutive segments pointing in the
//! same direction are merged, so structural equality is equality of paths.
//! Where an actual parameter is needed (evaluation, the scalar height
//! functions) each segment is traversed on an equal share of `[0, 1]`.

use num_traits::{One, Signed, Zero};

use crate::root_data::{RootDatum, Weight};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    segments: Vec<Weight>,
}

/// True if `b = c * a` for some positive rational c (both nonzero).
fn same_direction(a: &Weight, b: &Weight) -> bool {
    let (ka, kb) = match (
        a.lambda_coords().iter().next(),
        b.lambda_coords().iter().next(),
    ) {
        (Some(ka), Some(kb)) => (ka, kb),
        (None, None) => {
            // both are pure delta moves
            return a.delta_coeff().is_positive() == b.delta_coeff().is_positive()
                && !a.delta_coeff().is_zero()
                && !b.delta_coeff().is_zero();
        }
        _ => return false,
    };
    if ka.0 != kb.0 {
        return false;
    }
    let c = kb.1 / ka.1;
    c.is_positive() && b == &a.scale(&c)
}

impl Path {
    /// The straight path from the origin to `w` (the constant path if `w` is
    /// zero).
    pub fn straight(w: Weight) -> Self {
        Path::from_segments(vec![w])
    }

    /// The constant path at the origin.
    pub fn trivial() -> Self {
        Path::default()
    }

    /// Build a path from displacement segments, canonicalizing.
    pub fn from_segments(segments: Vec<Weight>) -> Self {
        let mut out: Vec<Weight> = Vec::with_capacity(segments.len());
        for seg in segments {
            if seg.is_zero() {
                continue;
            }
            if let Some(last) = out.last_mut() {
                if same_direction(last, &seg) {
                    last.add_scaled(&seg, &Rational::one());
                    continue;
                }
            }
            out.push(seg);
        }
        Path { segments: out }
    }

    pub fn segments(&self) -> &[Weight] {
        &self.segments
    }

    pub fn is_trivial(&self) -> bool {
        self.segments.is_empty()
    }

    /// The endpoint `pi(1)`, which is the weight of the path.
    pub fn endpoint(&self) -> Weight {
        let mut acc = Weight::zero();
        for seg in &self.segments {
            acc.add_scaled(seg, &Rational::one());
        }
        acc
    }

    /// Concatenation: this path followed by `other` translated to start at
    /// this path's endpoint.
    pub fn concat(&self, other: &Path) -> Path {
        let mut segs = self.segments.clone();
        segs.extend(other.segments.iter().cloned());
        Path::from_segments(segs)
    }

    /// The dual path `t -> pi(1 - t) - pi(1)`.
    pub fn dual(&self) -> Path {
        Path::from_segments(self.segments.iter().rev().map(|seg| seg.neg()).collect())
    }

    /// Projection along the null root, segment by segment.
    pub fn without_delta(&self) -> Path {
        Path::from_segments(
            self.segments
                .iter()
                .map(|seg| seg.without_delta())
                .collect(),
        )
    }

    /// Value at time t in `[0, 1]` under the uniform parametrization.
    pub fn evaluate(&self, t: &Rational) -> Result<Weight> {
        if t.is_negative() || t > &Rational::one() {
            return Err(Error::Domain(format!(
                "path parameter {} outside [0, 1]",
                t
            )));
        }
        let n = self.segments.len();
        if n == 0 {
            return Ok(Weight::zero());
        }
        let scaled = t * crate::rat(n as i64);
        let mut acc = Weight::zero();
        let mut remaining = scaled;
        for seg in &self.segments {
            if remaining <= Rational::zero() {
                break;
            }
            let share = if remaining >= Rational::one() {
                Rational::one()
            } else {
                remaining.clone()
            };
            acc.add_scaled(seg, &share);
            remaining -= Rational::one();
        }
        Ok(acc)
    }

    /// The scalar height function `t -> <alpha_i^vee, pi(t)>`.
    pub fn h_function(&self, datum: &RootDatum, i: usize) -> Result<ScalarPL> {
        let prefixes = pairing_prefixes(datum, self, i)?;
        let n = self.segments.len();
        if n == 0 {
            return Ok(ScalarPL {
                breakpoints: vec![
                    (Rational::zero(), Rational::zero()),
                    (Rational::one(), Rational::zero()),
                ],
            });
        }
        let breakpoints = prefixes
            .into_iter()
            .enumerate()
            .map(|(k, v)| (Rational::new((k as i64).into(), (n as i64).into()), v))
            .collect();
        Ok(ScalarPL { breakpoints })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.segments.iter().map(Weight::to_json).collect())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Path> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("path must be an array of segments".into()))?;
        let segs = arr
            .iter()
            .map(Weight::from_json)
            .collect::<Result<Vec<_>>>()?;
        Ok(Path::from_segments(segs))
    }
}

impl std::fmt::Display for Path {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.segments.is_empty() {
            return f.write_str("(0)");
        }
        for (k, seg) in self.segments.iter().enumerate() {
            if k > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "({})", seg)?;
        }
        Ok(())
    }
}

/// Pairings of the path's prefix sums with `alpha_i^vee`: the values of the
/// height function at the segment breakpoints.  Length is one more than the
/// number of segments (a single `0` for the constant path).
pub(crate) fn pairing_prefixes(datum: &RootDatum, path: &Path, i: usize) -> Result<Vec<Rational>> {
    // bounds check the index even for constant paths
    datum.pair(i, &Weight::zero())?;
    let mut out = Vec::with_capacity(path.segments.len() + 1);
    let mut acc = Rational::zero();
    out.push(acc.clone());
    for seg in &path.segments {
        acc += seg.coeff(i);
        out.push(acc.clone());
    }
    Ok(out)
}

/// A continuous piecewise-linear scalar function on `[0, 1]`, stored as
/// breakpoints `(t, value)` with strictly increasing times starting at 0 and
/// ending at 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarPL {
    breakpoints: Vec<(Rational, Rational)>,
}

/// Minimum of a piecewise-linear function together with the first and last
/// times attaining it (these are always breakpoint times).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinValue {
    pub min: Rational,
    pub first_argmin: Rational,
    pub last_argmin: Rational,
}

impl ScalarPL {
    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    pub fn value_at(&self, t: &Rational) -> Result<Rational> {
        let pts = &self.breakpoints;
        if t < &pts[0].0 || t > &pts[pts.len() - 1].0 {
            return Err(Error::Domain(format!("parameter {} outside [0, 1]", t)));
        }
        for w in pts.windows(2) {
            let ((t0, v0), (t1, v1)) = (&w[0], &w[1]);
            if t <= t1 {
                let f = (t - t0) / (t1 - t0);
                return Ok(v0 + (v1 - v0) * f);
            }
        }
        Ok(pts[pts.len() - 1].1.clone())
    }

    pub fn final_value(&self) -> &Rational {
        &self.breakpoints[self.breakpoints.len() - 1].1
    }

    pub fn min(&self) -> MinValue {
        let mut min = self.breakpoints[0].1.clone();
        for (_, v) in &self.breakpoints[1..] {
            if v < &min {
                min = v.clone();
            }
        }
        let first = self
            .breakpoints
            .iter()
            .find(|(_, v)| v == &min)
            .unwrap()
            .0
            .clone();
        let last = self
            .breakpoints
            .iter()
            .rev()
            .find(|(_, v)| v == &min)
            .unwrap()
            .0
            .clone();
        MinValue {
            min,
            first_argmin: first,
            last_argmin: last,
        }
    }
}
