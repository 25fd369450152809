//! Rational polyhedral cones with exact dual (ray/inequality) representations.
//!
//! Both representations are kept canonical: the rays are the lexicographically
//! sorted primitive extreme rays (with lineality directions stored as plus and
//! minus pairs), and the inequalities are the extreme rays of the polar cone.
//! That makes equality a plain comparison and duality a swap of the two lists.

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use crate::exact_linalg::{ratlin, IntMatrix, LinalgError};
use crate::{Int, Rat};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("ambient dimension mismatch: cone lives in dim {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Boundary,
    RelativeInterior,
}

/// Rational polyhedral cone in `Z^ambient_dim` coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<Vec<Int>>,
    ineqs: Vec<Vec<Int>>,
}

impl Cone {
    /// Cone generated by the given integer vectors.
    pub fn from_rays(ambient_dim: usize, generators: &[Vec<Int>]) -> Result<Cone, ConeError> {
        for g in generators {
            if g.len() != ambient_dim {
                return Err(ConeError::DimensionMismatch {
                    expected: ambient_dim,
                    got: g.len(),
                });
            }
        }
        let gens: Vec<Vec<Int>> = generators
            .iter()
            .filter(|g| !g.iter().all(|x| x.is_zero()))
            .cloned()
            .collect();
        let ineqs = polar_extreme(ambient_dim, &gens);
        let rays = polar_extreme(ambient_dim, &ineqs);
        Ok(Cone {
            ambient_dim,
            rays,
            ineqs,
        })
    }

    /// Cone cut out by `{x : a . x >= 0}` for the given inequality normals.
    pub fn from_inequalities(
        ambient_dim: usize,
        normals: &[Vec<Int>],
    ) -> Result<Cone, ConeError> {
        let c = Cone::from_rays(ambient_dim, normals)?;
        Ok(c.dual())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Canonical primitive extreme rays (lineality directions appear twice,
    /// with both signs).
    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    /// Canonical primitive facet normals (span equations appear as opposite
    /// pairs).
    pub fn inequalities(&self) -> &[Vec<Int>] {
        &self.ineqs
    }

    /// The polar cone `{y : y . x >= 0 for all x in self}`.
    pub fn dual(&self) -> Cone {
        Cone {
            ambient_dim: self.ambient_dim,
            rays: self.ineqs.clone(),
            ineqs: self.rays.clone(),
        }
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, ConeError> {
        if other.ambient_dim != self.ambient_dim {
            return Err(ConeError::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut normals = self.ineqs.clone();
        normals.extend(other.ineqs.iter().cloned());
        Cone::from_inequalities(self.ambient_dim, &normals)
    }

    /// Cone generated by the rays of both cones.
    pub fn hull_union(&self, other: &Cone) -> Result<Cone, ConeError> {
        if other.ambient_dim != self.ambient_dim {
            return Err(ConeError::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut gens = self.rays.clone();
        gens.extend(other.rays.iter().cloned());
        Cone::from_rays(self.ambient_dim, &gens)
    }

    pub fn contains(&self, v: &[Int], mode: Containment) -> Result<bool, ConeError> {
        if v.len() != self.ambient_dim {
            return Err(ConeError::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        match mode {
            Containment::Boundary => Ok(self.ineqs.iter().all(|a| !dot(a, v).is_negative())),
            Containment::RelativeInterior => {
                for a in &self.ineqs {
                    let val = dot(a, v);
                    if val.is_negative() {
                        return Ok(false);
                    }
                    // inequalities vanishing on the whole cone carve out the
                    // linear span and stay at zero in the relative interior
                    let vanishes_on_cone =
                        self.rays.iter().all(|r| dot(a, r).is_zero());
                    if !vanishes_on_cone && val.is_zero() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Dimension of the linear span of the cone.
    pub fn dim(&self) -> usize {
        ratlin::rank_int(&self.rays)
    }

    /// Image cone under the linear map `m` (applied to every ray).
    pub fn map(&self, m: &IntMatrix<Int>) -> Result<Cone, LinalgError> {
        if m.cols != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                got: m.cols,
            });
        }
        let images: Vec<Vec<Int>> = self.rays.iter().map(|r| m.mul_vec(r)).collect();
        Ok(Cone::from_rays(m.rows, &images).expect("image vectors have matching length"))
    }
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_rat(a: &[Rat], b: &[Int]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * &Rat::from(y.clone()));
    }
    acc
}

/// Divides by the content so the vector is primitive; zero stays zero.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators and divides by the content.
pub fn primitive_from_rat(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::from(1);
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    primitive(&ints)
}

/// Extreme rays (and plus/minus lineality basis) of the polar cone
/// `{y : y . g >= 0 for all g}` of the cone generated by `gens`.
///
/// Brute-force double description: the lineality of the polar is the
/// orthogonal complement of the span of `gens`; extreme rays come from
/// kernels of rank-(r-1) generator subsets, kept when one sign satisfies all
/// inequalities. The ambient dimension never exceeds 4 here, so the
/// combinatorics stay tiny.
fn polar_extreme(dim: usize, gens: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let gens_rat: Vec<Vec<Rat>> = gens.iter().map(|g| ratlin::to_rat(g)).collect();
    let r = ratlin::rank(&gens_rat);
    let mut out: Vec<Vec<Int>> = Vec::new();

    // lineality: everything orthogonal to the generators
    let lineality = if gens.is_empty() {
        (0..dim)
            .map(|i| {
                let mut v = vec![Rat::zero(); dim];
                v[i] = Rat::from(Int::from(1));
                v
            })
            .collect()
    } else {
        ratlin::kernel_basis(&gens_rat, dim)
    };
    for b in &lineality {
        let p = primitive_from_rat(b);
        out.push(p.iter().map(|x| -x.clone()).collect());
        out.push(p);
    }

    // extreme rays: kernel directions of rank-(r-1) subsets, reduced modulo
    // the lineality, with the sign fixed by the inequalities
    if r >= 1 {
        let idx: Vec<usize> = (0..gens.len()).collect();
        for subset in combinations(&idx, r - 1) {
            let sub: Vec<Vec<Rat>> = subset.iter().map(|&i| gens_rat[i].clone()).collect();
            if ratlin::rank(&sub) != r - 1 {
                continue;
            }
            let kernel = if sub.is_empty() {
                (0..dim)
                    .map(|i| {
                        let mut v = vec![Rat::zero(); dim];
                        v[i] = Rat::from(Int::from(1));
                        v
                    })
                    .collect::<Vec<_>>()
            } else {
                ratlin::kernel_basis(&sub, dim)
            };
            // pick a kernel direction outside the lineality space
            for cand in &kernel {
                if ratlin::in_span(&lineality, cand) {
                    continue;
                }
                let v = primitive_from_rat(cand);
                let pos = gens.iter().all(|g| !dot(&v, g).is_negative());
                let neg = gens.iter().all(|g| !dot(&v, g).is_positive());
                if pos && !neg {
                    out.push(v);
                } else if neg && !pos {
                    out.push(v.iter().map(|x| -x.clone()).collect());
                } else if pos && neg {
                    // orthogonal to every generator: already in the lineality
                } else {
                    continue;
                }
                break;
            }
        }
    }

    out.sort();
    out.dedup();
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        if items.len() - i < k {
            break;
        }
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Checks `a . v >= 0` (or `> 0`) for a rational functional against integer
/// vectors; shared helper for report code.
pub fn functional_positive_on(phi: &[Rat], vectors: &[Vec<Int>], strict: bool) -> bool {
    vectors.iter().all(|v| {
        let val = dot_rat(phi, v);
        if strict {
            val > Rat::zero()
        } else {
            val >= Rat::zero()
        }
    })
}
