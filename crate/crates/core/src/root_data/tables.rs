//! Static Cartan data for the supported finite and affine families.
//!
//! Matrices follow the convention `a[i][j] = <alpha_i^vee, alpha_j>`, so the
//! lambda-coordinates of a simple root `alpha_j` are the j-th column.  Affine
//! node numbering follows Kac's tables; the twisted "dagger" variants reverse
//! the node order of their parent so that the special node sits at the other
//! end of the diagram.
//!
//! Marks and comarks are spelled out per family rather than recovered from
//! the matrix kernel.  Unit tests check the defining identities
//! `sum_j a[i][j] * mark_j = 0` and `sum_i comark_i * a[i][j] = 0`, so a typo
//! in either the matrix or a label vector cannot survive the test suite.

use super::{CartanType, Family};

pub(crate) struct TypeData {
    /// Cartan matrix over node positions (ascending index order).
    pub matrix: Vec<Vec<i64>>,
    /// Kac labels a_i (affine only).
    pub marks: Option<Vec<i64>>,
    /// Dual Kac labels a_i^vee (affine only).
    pub comarks: Option<Vec<i64>>,
}

fn diag(n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    m
}

/// Single bond between positions p and q.
fn bond(m: &mut [Vec<i64>], p: usize, q: usize) {
    m[p][q] = -1;
    m[q][p] = -1;
}

/// Multiple bond: `a[p][q] = -w`, `a[q][p] = -1`.  The diagram arrow points
/// at p, the short-root side.
fn arrow(m: &mut [Vec<i64>], p: usize, q: usize, w: i64) {
    m[p][q] = -w;
    m[q][p] = -1;
}

fn finite_matrix(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut m = diag(n);
    match family {
        Family::A => {
            for p in 1..n {
                bond(&mut m, p - 1, p);
            }
        }
        Family::B => {
            for p in 1..n - 1 {
                bond(&mut m, p - 1, p);
            }
            // alpha_n short
            arrow(&mut m, n - 1, n - 2, 2);
        }
        Family::C => {
            for p in 1..n - 1 {
                bond(&mut m, p - 1, p);
            }
            // alpha_n long
            arrow(&mut m, n - 2, n - 1, 2);
        }
        Family::D => {
            for p in 1..n - 1 {
                bond(&mut m, p - 1, p);
            }
            bond(&mut m, n - 3, n - 1);
        }
        Family::E => {
            // chain over nodes 1..n-1 with node n on the branch node
            for p in 1..n - 1 {
                bond(&mut m, p - 1, p);
            }
            let branch = match n {
                6 | 7 => 2, // node 3
                8 => 4,     // node 5
                _ => unreachable!(),
            };
            bond(&mut m, branch, n - 1);
        }
        Family::F => {
            bond(&mut m, 0, 1);
            arrow(&mut m, 2, 1, 2);
            bond(&mut m, 2, 3);
        }
        Family::G => {
            // alpha_2 short
            arrow(&mut m, 1, 0, 3);
        }
    }
    m
}

fn untwisted(family: Family, n: usize) -> TypeData {
    // positions 0..=n are nodes 0..=n
    let nn = n + 1;
    let mut m = diag(nn);
    let marks: Vec<i64>;
    let comarks: Vec<i64>;
    match family {
        Family::A => {
            if n == 1 {
                m[0][1] = -2;
                m[1][0] = -2;
            } else {
                for p in 1..=n {
                    bond(&mut m, p - 1, p);
                }
                bond(&mut m, 0, n);
            }
            marks = vec![1; nn];
            comarks = vec![1; nn];
        }
        Family::B => {
            bond(&mut m, 0, 2);
            for p in 2..n {
                bond(&mut m, p - 1, p);
            }
            arrow(&mut m, n, n - 1, 2);
            let mut a = vec![2; nn];
            a[0] = 1;
            a[1] = 1;
            marks = a.clone();
            a[n] = 1;
            comarks = a;
        }
        Family::C => {
            arrow(&mut m, 1, 0, 2);
            for p in 2..n {
                bond(&mut m, p - 1, p);
            }
            arrow(&mut m, n - 1, n, 2);
            let mut a = vec![2; nn];
            a[0] = 1;
            a[n] = 1;
            marks = a;
            comarks = vec![1; nn];
        }
        Family::D => {
            bond(&mut m, 0, 2);
            for p in 2..n {
                bond(&mut m, p - 1, p);
            }
            bond(&mut m, n - 2, n);
            let mut a = vec![2; nn];
            a[0] = 1;
            a[1] = 1;
            a[n - 1] = 1;
            a[n] = 1;
            marks = a.clone();
            comarks = a;
        }
        Family::E => {
            for p in 2..n {
                bond(&mut m, p - 1, p);
            }
            match n {
                6 => {
                    bond(&mut m, 3, 6);
                    bond(&mut m, 6, 0);
                    marks = vec![1, 1, 2, 3, 2, 1, 2];
                }
                7 => {
                    bond(&mut m, 3, 7);
                    bond(&mut m, 0, 1);
                    marks = vec![1, 2, 3, 4, 3, 2, 1, 2];
                }
                8 => {
                    bond(&mut m, 5, 8);
                    bond(&mut m, 0, 1);
                    marks = vec![1, 2, 3, 4, 5, 6, 4, 2, 3];
                }
                _ => unreachable!(),
            }
            comarks = marks.clone();
        }
        Family::F => {
            bond(&mut m, 0, 1);
            bond(&mut m, 1, 2);
            arrow(&mut m, 3, 2, 2);
            bond(&mut m, 3, 4);
            marks = vec![1, 2, 3, 4, 2];
            comarks = vec![1, 2, 3, 2, 1];
        }
        Family::G => {
            bond(&mut m, 0, 1);
            arrow(&mut m, 2, 1, 3);
            marks = vec![1, 2, 3];
            comarks = vec![1, 2, 1];
        }
    }
    TypeData {
        matrix: m,
        marks: Some(marks),
        comarks: Some(comarks),
    }
}

/// A_{2n}^(2) for written rank 2n (nodes 0..=n).  For n = 1 the two double
/// bonds of the general shape collapse into the single quadruple bond.  The
/// dagger variant reverses the node order.
fn a_even_twisted(n: usize, dagger: bool) -> TypeData {
    let nn = n + 1;
    let mut m = diag(nn);
    if n == 1 {
        if dagger {
            arrow(&mut m, 1, 0, 4);
        } else {
            arrow(&mut m, 0, 1, 4);
        }
    } else {
        for p in 2..n {
            bond(&mut m, p - 1, p);
        }
        if dagger {
            arrow(&mut m, 1, 0, 2);
            arrow(&mut m, n, n - 1, 2);
        } else {
            arrow(&mut m, 0, 1, 2);
            arrow(&mut m, n - 1, n, 2);
        }
    }
    let mut marks = vec![2; nn];
    let mut comarks = vec![2; nn];
    if dagger {
        marks[0] = 1;
        comarks[n] = 1;
    } else {
        marks[n] = 1;
        comarks[0] = 1;
    }
    TypeData {
        matrix: m,
        marks: Some(marks),
        comarks: Some(comarks),
    }
}

/// A_{2n-1}^(2) for written rank 2n-1, n >= 3 (nodes 0..=n).
fn a_odd_twisted(n: usize) -> TypeData {
    let nn = n + 1;
    let mut m = diag(nn);
    bond(&mut m, 0, 2);
    for p in 2..n {
        bond(&mut m, p - 1, p);
    }
    arrow(&mut m, n - 1, n, 2);
    let mut marks = vec![2; nn];
    marks[0] = 1;
    marks[1] = 1;
    marks[n] = 1;
    let mut comarks = vec![2; nn];
    comarks[0] = 1;
    comarks[1] = 1;
    TypeData {
        matrix: m,
        marks: Some(marks),
        comarks: Some(comarks),
    }
}

/// D_{n+1}^(2) for written rank n+1, n >= 2 (nodes 0..=n).
fn d_twisted(n: usize) -> TypeData {
    let nn = n + 1;
    let mut m = diag(nn);
    arrow(&mut m, 0, 1, 2);
    for p in 2..n {
        bond(&mut m, p - 1, p);
    }
    arrow(&mut m, n, n - 1, 2);
    let mut comarks = vec![2; nn];
    comarks[0] = 1;
    comarks[n] = 1;
    TypeData {
        matrix: m,
        marks: Some(vec![1; nn]),
        comarks: Some(comarks),
    }
}

/// E6^(2) (nodes 0..=4): the transpose of F4^(1).
fn e6_twisted() -> TypeData {
    let mut m = diag(5);
    bond(&mut m, 0, 1);
    bond(&mut m, 1, 2);
    arrow(&mut m, 2, 3, 2);
    bond(&mut m, 3, 4);
    TypeData {
        matrix: m,
        marks: Some(vec![1, 2, 3, 2, 1]),
        comarks: Some(vec![1, 2, 3, 4, 2]),
    }
}

/// D4^(3) (nodes 0..=2): the transpose of G2^(1).
fn d4_triple() -> TypeData {
    let mut m = diag(3);
    bond(&mut m, 0, 1);
    arrow(&mut m, 1, 2, 3);
    TypeData {
        matrix: m,
        marks: Some(vec![1, 2, 1]),
        comarks: Some(vec![1, 2, 3]),
    }
}

pub(crate) fn build(ct: &CartanType) -> TypeData {
    match ct.twist_order() {
        None => TypeData {
            matrix: finite_matrix(ct.family(), ct.rank()),
            marks: None,
            comarks: None,
        },
        Some(1) => untwisted(ct.family(), ct.rank()),
        Some(2) => match ct.family() {
            Family::A if ct.rank() % 2 == 0 => a_even_twisted(ct.rank() / 2, ct.dagger()),
            Family::A => a_odd_twisted((ct.rank() + 1) / 2),
            Family::D => d_twisted(ct.rank() - 1),
            Family::E => e6_twisted(),
            _ => unreachable!("admissibility checked by CartanType"),
        },
        Some(3) => d4_triple(),
        Some(_) => unreachable!(),
    }
}
