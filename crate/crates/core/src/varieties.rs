//! The geometric catalog of the seven variety types: intersection pairing,
//! Mori/nef/moving cones, Mordell-Weil groups, flop actions, and the
//! very-ampleness data for the distinguished divisor class `W`.
//!
//! Divisor classes are integer 4-vectors in the basis `(H, E1, E2, E3)`,
//! curve classes in the basis `(h, e1, e2, e3)`; the pairing between them is
//! `a*b - a1*b1 - a2*b2 - a3*b3`.

use std::fmt;

use num_traits::Signed;

use crate::cones::{Cone, ConeError};
use crate::exact_linalg::{abelian_quotient, GroupInvariants, IntMatrix};
use crate::{int, Int, IntMat};

/// The seven types of cubic elliptic varieties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarietyType {
    X3,
    XS,
    XS2,
    XSSS,
    X12,
    XS11,
    X111,
}

pub const ALL_TYPES: [VarietyType; 7] = [
    VarietyType::X3,
    VarietyType::XS,
    VarietyType::XS2,
    VarietyType::XSSS,
    VarietyType::X12,
    VarietyType::XS11,
    VarietyType::X111,
];

pub const EXTREMAL_TYPES: [VarietyType; 4] = [
    VarietyType::X3,
    VarietyType::XS,
    VarietyType::XS2,
    VarietyType::XSSS,
];

impl VarietyType {
    pub fn name(self) -> &'static str {
        match self {
            VarietyType::X3 => "X3",
            VarietyType::XS => "XS",
            VarietyType::XS2 => "XS2",
            VarietyType::XSSS => "XSSS",
            VarietyType::X12 => "X12",
            VarietyType::XS11 => "XS11",
            VarietyType::X111 => "X111",
        }
    }

    pub fn parse(s: &str) -> Option<VarietyType> {
        ALL_TYPES
            .iter()
            .copied()
            .find(|t| t.name().eq_ignore_ascii_case(s))
    }

    /// The four types with finite Mordell-Weil group, i.e. those whose Cox
    /// rings are presented explicitly.
    pub fn is_extremal(self) -> bool {
        matches!(
            self,
            VarietyType::X3 | VarietyType::XS | VarietyType::XS2 | VarietyType::XSSS
        )
    }
}

impl fmt::Display for VarietyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A type together with the dimension `n >= 3` of the variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarietySpec {
    pub ty: VarietyType,
    pub n: usize,
}

impl VarietySpec {
    pub fn new(ty: VarietyType, n: usize) -> Result<VarietySpec, VarietyError> {
        if n < 3 {
            return Err(VarietyError::DimensionTooSmall(n));
        }
        Ok(VarietySpec { ty, n })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VarietyError {
    #[error("dimension must be at least 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("operation not supported for type {0}")]
    UnsupportedType(VarietyType),
    #[error("computed cone disagrees with the catalog: computed rays {computed:?}, catalog rays {expected:?}")]
    MismatchWithCatalog {
        computed: Vec<Vec<Int>>,
        expected: Vec<Vec<Int>>,
    },
    #[error(transparent)]
    Cone(#[from] ConeError),
}

pub fn v4(a: i64, b: i64, c: i64, d: i64) -> Vec<Int> {
    vec![int(a), int(b), int(c), int(d)]
}

/// Intersection pairing between a divisor class and a curve class.
pub fn pairing(d: &[Int], c: &[Int]) -> Int {
    assert_eq!(d.len(), 4);
    assert_eq!(c.len(), 4);
    &d[0] * &c[0] - &d[1] * &c[1] - &d[2] * &c[2] - &d[3] * &c[3]
}

/// Multiplies by `diag(1,-1,-1,-1)`, converting pairing-duality into plain
/// Euclidean duality for the cones module.
pub fn twist(v: &[Int]) -> Vec<Int> {
    assert_eq!(v.len(), 4);
    vec![v[0].clone(), -v[1].clone(), -v[2].clone(), -v[3].clone()]
}

/// The class `w = [W] = 4H - 3E1 - 2E2 - E3`.
pub fn w_class() -> Vec<Int> {
    v4(4, -3, -2, -1)
}

/// Generators of the Mori cone, in curve coordinates.
pub fn mori_generators(ty: VarietyType) -> Vec<Vec<Int>> {
    use VarietyType::*;
    match ty {
        // e1-e2, e2-e3, h-e1, e3
        X3 | XS => vec![
            v4(0, 1, -1, 0),
            v4(0, 0, 1, -1),
            v4(1, -1, 0, 0),
            v4(0, 0, 0, 1),
        ],
        // e1-e2, e2, e3, h-e1, h-e3
        X12 | XS2 => vec![
            v4(0, 1, -1, 0),
            v4(0, 0, 1, 0),
            v4(0, 0, 0, 1),
            v4(1, -1, 0, 0),
            v4(1, 0, 0, -1),
        ],
        // e1, e2, e3, h-e1, h-e2, h-e3
        X111 | XS11 | XSSS => vec![
            v4(0, 1, 0, 0),
            v4(0, 0, 1, 0),
            v4(0, 0, 0, 1),
            v4(1, -1, 0, 0),
            v4(1, 0, -1, 0),
            v4(1, 0, 0, -1),
        ],
    }
}

/// Catalog columns generating the nef cone, in divisor coordinates.
pub fn nef_matrix_columns(ty: VarietyType) -> Vec<Vec<Int>> {
    use VarietyType::*;
    let mut cols = vec![
        v4(1, -1, -1, -1),
        v4(1, -1, -1, 0),
        v4(1, -1, 0, 0),
        v4(1, 0, 0, 0),
    ];
    match ty {
        X3 | XS => {}
        X12 | XS2 => {
            cols.push(v4(1, -1, 0, -1));
            cols.push(v4(1, 0, 0, -1));
        }
        X111 | XS11 | XSSS => {
            cols.push(v4(1, -1, 0, -1));
            cols.push(v4(1, 0, 0, -1));
            cols.push(v4(1, 0, -1, -1));
            cols.push(v4(1, 0, -1, 0));
        }
    }
    cols
}

/// Nef cone computed as the pairing-dual of the Mori generators, checked
/// against the catalog columns.
pub fn nef_cone(ty: VarietyType) -> Result<Cone, VarietyError> {
    let twisted: Vec<Vec<Int>> = mori_generators(ty).iter().map(|c| twist(c)).collect();
    let computed = Cone::from_rays(4, &twisted)?.dual();
    let expected = Cone::from_rays(4, &nef_matrix_columns(ty))?;
    if computed != expected {
        return Err(VarietyError::MismatchWithCatalog {
            computed: computed.rays().to_vec(),
            expected: expected.rays().to_vec(),
        });
    }
    Ok(computed)
}

/// Canonical class `K_X = (1-n) * (H - E1 - E2 - E3)`.
pub fn canonical_class(n: usize) -> Result<Vec<Int>, VarietyError> {
    if n < 3 {
        return Err(VarietyError::DimensionTooSmall(n));
    }
    let a = Int::from(1 - n as i64);
    Ok(vec![a.clone(), -a.clone(), -a.clone(), -a])
}

/// Generators of the subgroup of vertical classes plus the zero-section.
pub fn vertical_lattice(ty: VarietyType) -> Vec<Vec<Int>> {
    use VarietyType::*;
    // L = <H - E1 - E2 - E3, E3> in every case
    let mut gens = vec![v4(1, -1, -1, -1), v4(0, 0, 0, 1)];
    match ty {
        X111 => {}
        XS11 => gens.push(v4(1, -3, 0, 0)),
        XSSS => {
            gens.push(v4(1, -3, 0, 0));
            gens.push(v4(1, 0, -3, 0));
        }
        X12 => gens.push(v4(0, 1, -1, 0)),
        X3 | XS => {
            gens.push(v4(0, 1, -1, 0));
            gens.push(v4(0, 0, 1, -1));
        }
        XS2 => {
            gens.push(v4(1, -3, 0, 0));
            gens.push(v4(0, 0, 1, -1));
        }
    }
    gens
}

/// Mordell-Weil group `Pic(X) / T` as abelian-group invariants.
pub fn mordell_weil(ty: VarietyType) -> GroupInvariants {
    abelian_quotient(4, &vertical_lattice(ty)).expect("vertical lattice vectors have length 4")
}

/// Flop involution on `Pic(X)`, available for `X3` and `XS2`.
#[derive(Clone, Debug)]
pub struct FlopAction {
    pub m: IntMat,
}

pub fn flop_action(ty: VarietyType) -> Result<FlopAction, VarietyError> {
    let rows: [[i64; 4]; 4] = match ty {
        VarietyType::X3 => [[2, 1, 0, 0], [-3, -2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        VarietyType::XS2 => [[2, 1, 0, 0], [-3, -2, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
        other => return Err(VarietyError::UnsupportedType(other)),
    };
    let m = IntMatrix::from_fn(4, 4, |i, j| int(rows[i][j]));
    Ok(FlopAction { m })
}

/// Curve-class generators of the catalog cone whose pairing-dual is the
/// flopped nef chamber.
pub fn flop_chamber_dual_generators(ty: VarietyType) -> Result<Vec<Vec<Int>>, VarietyError> {
    match ty {
        // e2-e3, e3, 3h-2e1-e2, e1-h
        VarietyType::X3 => Ok(vec![
            v4(0, 0, 1, -1),
            v4(0, 0, 0, 1),
            v4(3, -2, -1, 0),
            v4(-1, 1, 0, 0),
        ]),
        // e2, e3, 2h-e1-e2, 3h-2e1-e3, e1-h
        VarietyType::XS2 => Ok(vec![
            v4(0, 0, 1, 0),
            v4(0, 0, 0, 1),
            v4(2, -1, -1, 0),
            v4(3, -2, 0, -1),
            v4(-1, 1, 0, 0),
        ]),
        other => Err(VarietyError::UnsupportedType(other)),
    }
}

/// Chambers of the moving cone: `[Nef]` for `XS`/`XSSS`, `[Nef, flop*Nef]`
/// for `X3`/`XS2`. The flopped chamber is cross-checked against the
/// catalog's dual-cone description.
pub fn moving_cone(ty: VarietyType) -> Result<Vec<Cone>, VarietyError> {
    let nef = nef_cone(ty)?;
    match ty {
        VarietyType::XS | VarietyType::XSSS => Ok(vec![nef]),
        VarietyType::X3 | VarietyType::XS2 => {
            let flop = flop_action(ty)?;
            let image = nef.map(&flop.m).expect("flop matrix is 4x4");
            let twisted: Vec<Vec<Int>> = flop_chamber_dual_generators(ty)?
                .iter()
                .map(|c| twist(c))
                .collect();
            let expected = Cone::from_rays(4, &twisted)?.dual();
            if image != expected {
                return Err(VarietyError::MismatchWithCatalog {
                    computed: image.rays().to_vec(),
                    expected: expected.rays().to_vec(),
                });
            }
            Ok(vec![nef, image])
        }
        other => Err(VarietyError::UnsupportedType(other)),
    }
}

/// Report of the very-ampleness checks for `W`.
#[derive(Clone, Debug)]
pub struct WAmpleReport {
    /// pairing of w with each Mori generator, in catalog order
    pub mori_pairings: Vec<Int>,
    /// w equals (H-E1-E2-E3) + (H-E1-E2) + (H-E1) + H
    pub decomposition_holds: bool,
    /// every pairing is strictly positive (w interior to the nef cone)
    pub interior: bool,
}

pub fn check_w_ample(ty: VarietyType) -> Result<WAmpleReport, VarietyError> {
    if !ty.is_extremal() {
        return Err(VarietyError::UnsupportedType(ty));
    }
    let w = w_class();
    let mori_pairings: Vec<Int> = mori_generators(ty)
        .iter()
        .map(|c| pairing(&w, c))
        .collect();
    let interior = mori_pairings.iter().all(|p| p.is_positive());
    let summands = [
        v4(1, -1, -1, -1),
        v4(1, -1, -1, 0),
        v4(1, -1, 0, 0),
        v4(1, 0, 0, 0),
    ];
    let mut sum = v4(0, 0, 0, 0);
    for s in &summands {
        for i in 0..4 {
            sum[i] += &s[i];
        }
    }
    let decomposition_holds = sum == w;
    Ok(WAmpleReport {
        mori_pairings,
        decomposition_holds,
        interior,
    })
}
