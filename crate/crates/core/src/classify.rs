//! Classification of a pair (cubic hypersurface, line) into one of the
//! seven variety types, driven by the multiplicities and star-point pattern
//! of the scheme-theoretic intersection of the line with the cubic.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::cones::{primitive, primitive_from_rat};
use crate::exact_linalg::ratlin;
use crate::polynom::{random_admissible, MultiPoly, PolyError, VariableContext};
use crate::varieties::VarietyType;
use crate::{Int, Rat};

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error("dimension must be at least 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("cubic must be a nonzero homogeneous form of degree 3")]
    NotHomogeneousCubic,
    #[error("polynomial has {got} variables, the ambient ring has {want}")]
    ArityMismatch { got: usize, want: usize },
    #[error("the two points do not span a line")]
    DegeneratePoints,
    #[error("the line is contained in the cubic")]
    LineContainedInHypersurface,
    #[error("the intersection contains a point with irrational coordinates")]
    IrrationalIntersection,
    #[error("the cubic is singular at intersection point {0:?}")]
    SingularPoint(Vec<Int>),
    #[error("point does not lie on the cubic")]
    NotOnHypersurface,
    #[error("star pattern matches no catalog type: {0}")]
    InconsistentStarPattern(String),
    #[error("degenerate coefficient draw: {0}")]
    DegenerateDraw(String),
    #[error("cannot parse instance: {0}")]
    InputFormat(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A smooth-along-the-line cubic hypersurface `Y` in `P^{n+1}`, given by a
/// cubic form in `x1 .. x{n+2}`.
#[derive(Clone, Debug)]
pub struct CubicHypersurface {
    n: usize,
    f: MultiPoly,
}

impl CubicHypersurface {
    pub fn new(n: usize, f: MultiPoly) -> Result<Self, ClassifyError> {
        if n < 3 {
            return Err(ClassifyError::DimensionTooSmall(n));
        }
        if f.arity() != n + 2 {
            return Err(ClassifyError::ArityMismatch {
                got: f.arity(),
                want: n + 2,
            });
        }
        if f.is_zero() || f.terms().any(|(m, _)| m.iter().sum::<u32>() != 3) {
            return Err(ClassifyError::NotHomogeneousCubic);
        }
        Ok(CubicHypersurface { n, f })
    }

    pub fn parse(n: usize, text: &str) -> Result<Self, ClassifyError> {
        let ctx = VariableContext::proj_ring(n);
        Self::new(n, MultiPoly::parse(text, &ctx)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn form(&self) -> &MultiPoly {
        &self.f
    }

    pub fn gradient_at(&self, p: &[Rat]) -> Vec<Rat> {
        (0..self.f.arity())
            .map(|i| self.f.derivative(i).eval(p))
            .collect()
    }
}

/// A projective line spanned by two rational points.
#[derive(Clone, Debug)]
pub struct ProjLine {
    p: Vec<Rat>,
    q: Vec<Rat>,
}

impl ProjLine {
    pub fn new(p: Vec<Rat>, q: Vec<Rat>) -> Result<Self, ClassifyError> {
        if p.len() != q.len() || ratlin::rank(&[p.clone(), q.clone()]) != 2 {
            return Err(ClassifyError::DegeneratePoints);
        }
        Ok(ProjLine { p, q })
    }

    /// The line `x1 = .. = 0` spanned by coordinate points `e_a, e_b`
    /// (0-based indices) in a space with `arity` coordinates.
    pub fn coordinate(arity: usize, a: usize, b: usize) -> Self {
        let e = |i: usize| {
            let mut v = vec![Rat::zero(); arity];
            v[i] = Rat::one();
            v
        };
        ProjLine { p: e(a), q: e(b) }
    }

    pub fn points(&self) -> (&[Rat], &[Rat]) {
        (&self.p, &self.q)
    }

    /// The point `u*P + v*Q`.
    fn at(&self, u: &Rat, v: &Rat) -> Vec<Rat> {
        self.p
            .iter()
            .zip(&self.q)
            .map(|(a, b)| &(a * u) + &(b * v))
            .collect()
    }
}

/// One point of `Y` cut out by the line, with its intersection multiplicity
/// and star flag. The point is stored as a primitive integer vector whose
/// first nonzero entry is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionRecord {
    pub point: Vec<Int>,
    pub multiplicity: u32,
    pub is_star: bool,
}

/// Local shape of the cubic at a smooth point: after moving the point to
/// `e_{n+2}` and its tangent hyperplane to `{x_{n+1} = 0}`, the form reads
/// `x_{n+1}*a + x_{n+2}*b + c` with `b, c` in `x1 .. x_n` only.
#[derive(Clone, Debug)]
pub struct LocalForm {
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub c: MultiPoly,
}

fn normalize_point(v: &[Rat]) -> Vec<Int> {
    let mut w = primitive_from_rat(v);
    if let Some(first) = w.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in w.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    w
}

// ---------------------------------------------------------------------------
// Rational roots of the restricted binary cubic
// ---------------------------------------------------------------------------

fn poly_eval(coeffs: &[Rat], t: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * t) + c;
    }
    acc
}

fn divide_out_root(coeffs: &[Rat], r: &Rat) -> Vec<Rat> {
    let k = coeffs.len() - 1;
    let mut quot = vec![Rat::zero(); k];
    let mut carry = Rat::zero();
    for j in (0..k).rev() {
        carry = &(&carry * r) + &coeffs[j + 1];
        quot[j] = carry.clone();
    }
    debug_assert!((&(&carry * r) + &coeffs[0]).is_zero());
    quot
}

fn positive_divisors(x: &Int) -> Vec<Int> {
    let x = x.abs();
    let mut divs = Vec::new();
    let mut i = Int::one();
    while &i * &i <= x {
        if (&x % &i).is_zero() {
            divs.push(i.clone());
            divs.push(&x / &i);
        }
        i += 1;
    }
    divs
}

fn find_rational_root(coeffs: &[Rat]) -> Option<Rat> {
    if coeffs[0].is_zero() {
        return Some(Rat::zero());
    }
    // clear denominators to an integer polynomial
    let mut lcm = Int::one();
    for c in coeffs {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let ints: Vec<Int> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let ints = primitive(&ints);
    let lead = ints.last().unwrap();
    let mut candidates = BTreeSet::new();
    for d in positive_divisors(&ints[0]) {
        for e in positive_divisors(lead) {
            let r = Rat::new(d.clone(), e);
            candidates.insert(-r.clone());
            candidates.insert(r);
        }
    }
    candidates.into_iter().find(|r| poly_eval(coeffs, r).is_zero())
}

/// A projective root `(u : v)` of the binary cubic with its multiplicity.
type RootWithMultiplicity = ((Rat, Rat), u32);

/// Intersection points of the line with the cubic, as pairs
/// `(projective root (u : v), multiplicity)` summing to 3.
fn binary_cubic_roots(coeffs: [Rat; 4]) -> Result<Vec<RootWithMultiplicity>, ClassifyError> {
    if coeffs.iter().all(|c| c.is_zero()) {
        return Err(ClassifyError::LineContainedInHypersurface);
    }
    let mut roots: Vec<RootWithMultiplicity> = Vec::new();
    // factor of u: the root (0 : 1)
    let top = (0..4).rev().find(|&k| !coeffs[k].is_zero()).unwrap();
    if top < 3 {
        roots.push(((Rat::zero(), Rat::one()), (3 - top) as u32));
    }
    // dehomogenized polynomial in t = v/u
    let mut p: Vec<Rat> = coeffs[..=top].to_vec();
    while p.len() > 1 {
        let r = find_rational_root(&p).ok_or(ClassifyError::IrrationalIntersection)?;
        p = divide_out_root(&p, &r);
        match roots.iter_mut().find(|((u, v), _)| u.is_one() && *v == r) {
            Some((_, m)) => *m += 1,
            None => roots.push(((Rat::one(), r), 1)),
        }
    }
    debug_assert_eq!(roots.iter().map(|&(_, m)| m).sum::<u32>(), 3);
    Ok(roots)
}

/// The intersection divisor of the line with the cubic: points with
/// multiplicities summing to 3.
pub fn line_intersection(
    y: &CubicHypersurface,
    l: &ProjLine,
) -> Result<Vec<(Vec<Rat>, u32)>, ClassifyError> {
    let arity = y.f.arity();
    if l.p.len() != arity {
        return Err(ClassifyError::ArityMismatch {
            got: l.p.len(),
            want: arity,
        });
    }
    let uv = VariableContext::new(vec!["u".into(), "v".into()]);
    let cols: Vec<Vec<Rat>> = (0..arity)
        .map(|i| vec![l.p[i].clone(), l.q[i].clone()])
        .collect();
    let g = y.f.substitute_linear(&uv, &cols);
    let coeff = |k: u32| g.coeff(&[3 - k, k]);
    let roots = binary_cubic_roots([coeff(0), coeff(1), coeff(2), coeff(3)])?;
    Ok(roots
        .into_iter()
        .map(|((u, v), m)| (l.at(&u, &v), m))
        .collect())
}

// ---------------------------------------------------------------------------
// Local form and star points
// ---------------------------------------------------------------------------

/// Moves `p` to `e_{n+2}` and its tangent hyperplane to `{x_{n+1} = 0}` by
/// a deterministic linear change of coordinates, then splits the cubic as
/// `x_{n+1}*a + x_{n+2}*b + c`.
pub fn local_form(y: &CubicHypersurface, p: &[Rat]) -> Result<LocalForm, ClassifyError> {
    let arity = y.f.arity();
    if p.len() != arity {
        return Err(ClassifyError::ArityMismatch {
            got: p.len(),
            want: arity,
        });
    }
    if !y.f.eval(p).is_zero() {
        return Err(ClassifyError::NotOnHypersurface);
    }
    let grad = y.gradient_at(p);
    if grad.iter().all(|x| x.is_zero()) {
        return Err(ClassifyError::SingularPoint(normalize_point(p)));
    }

    // new basis: b_1 .. b_n span the tangent hyperplane together with p,
    // b_{n+1} is transverse to it, b_{n+2} = p
    let mut basis: Vec<Vec<Rat>> = vec![p.to_vec()];
    for k in ratlin::kernel_basis(std::slice::from_ref(&grad), arity) {
        if basis.len() == arity - 1 {
            break;
        }
        let mut trial = basis.clone();
        trial.push(k.clone());
        if ratlin::rank(&trial) == trial.len() {
            basis.push(k);
        }
    }
    debug_assert_eq!(basis.len(), arity - 1);
    let j0 = grad.iter().position(|x| !x.is_zero()).unwrap();
    let mut transverse = vec![Rat::zero(); arity];
    transverse[j0] = Rat::one();

    let mut cols_of_basis: Vec<Vec<Rat>> = basis[1..].to_vec();
    cols_of_basis.push(transverse);
    cols_of_basis.push(p.to_vec());
    // substitute_linear wants, per old variable i, its image as a vector of
    // coefficients over the new variables
    let rows: Vec<Vec<Rat>> = (0..arity)
        .map(|i| cols_of_basis.iter().map(|b| b[i].clone()).collect())
        .collect();
    let fp = y.f.substitute_linear(y.f.ctx(), &rows);

    let n = arity - 2;
    let ctx = y.f.ctx();
    let mut a = MultiPoly::zero(ctx);
    let mut b = MultiPoly::zero(ctx);
    let mut c = MultiPoly::zero(ctx);
    for (m, coeff) in fp.terms() {
        let mut m = m.clone();
        if m[n] > 0 {
            m[n] -= 1;
            a = a.add(&MultiPoly::monomial(ctx, m, coeff.clone()));
        } else if m[n + 1] > 0 {
            assert_eq!(
                m[n + 1], 1,
                "tangency failed: residual term of x-degree > 1 in the vertex variable"
            );
            m[n + 1] -= 1;
            b = b.add(&MultiPoly::monomial(ctx, m, coeff.clone()));
        } else {
            c = c.add(&MultiPoly::monomial(ctx, m, coeff.clone()));
        }
    }
    Ok(LocalForm { a, b, c })
}

/// A smooth point of the cubic is a star point when the tangent-hyperplane
/// section is a cone with vertex at the point.
pub fn is_star_point(y: &CubicHypersurface, p: &[Rat]) -> Result<bool, ClassifyError> {
    Ok(local_form(y, p)?.b.is_zero())
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Classification {
    pub ty: VarietyType,
    pub records: Vec<IntersectionRecord>,
}

/// Decides the type of the pair from the intersection multiplicities and
/// star pattern along the line.
pub fn classify(y: &CubicHypersurface, l: &ProjLine) -> Result<Classification, ClassifyError> {
    let mut records = Vec::new();
    for (point, multiplicity) in line_intersection(y, l)? {
        let is_star = is_star_point(y, &point)?;
        records.push(IntersectionRecord {
            point: normalize_point(&point),
            multiplicity,
            is_star,
        });
    }
    records.sort_by(|a, b| {
        b.multiplicity
            .cmp(&a.multiplicity)
            .then_with(|| a.point.cmp(&b.point))
    });
    let pattern: Vec<u32> = records.iter().map(|r| r.multiplicity).collect();
    let stars = records.iter().filter(|r| r.is_star).count();
    use VarietyType::*;
    let ty = match (pattern.as_slice(), stars) {
        ([3], 1) => XS,
        ([3], 0) => X3,
        ([2, 1], _) => {
            let double = &records[0];
            let simple = &records[1];
            match (double.is_star, simple.is_star) {
                (false, true) => XS2,
                (false, false) => X12,
                _ => {
                    return Err(ClassifyError::InconsistentStarPattern(format!(
                        "double point star = {}, simple point star = {}",
                        double.is_star, simple.is_star
                    )))
                }
            }
        }
        ([1, 1, 1], 3) => XSSS,
        ([1, 1, 1], 1) => XS11,
        ([1, 1, 1], 0) => X111,
        (p, s) => {
            return Err(ClassifyError::InconsistentStarPattern(format!(
                "multiplicities {p:?} with {s} star point(s)"
            )))
        }
    };
    Ok(Classification { ty, records })
}

// ---------------------------------------------------------------------------
// Normal forms
// ---------------------------------------------------------------------------

/// Assembles the catalog normal form of a type with seeded coefficients.
/// Fails with [`ClassifyError::DegenerateDraw`] when a coefficient needed
/// for the expected configuration vanished.
pub fn normal_form(
    ty: VarietyType,
    n: usize,
    seed: u64,
) -> Result<(CubicHypersurface, ProjLine), ClassifyError> {
    if n < 3 {
        return Err(ClassifyError::DimensionTooSmall(n));
    }
    let ctx = VariableContext::proj_ring(n);
    let coeffs = random_admissible(ty, n, seed);
    let form = |name: &str| coeffs.form(name).embed(&ctx);
    check_draw(ty, n, &form)?;
    let x = |i: usize| MultiPoly::var(&ctx, i - 1); // 1-based
    let xn1 = x(n + 1);
    let xn2 = x(n + 2);
    use VarietyType::*;
    let f = match ty {
        X3 => xn1
            .mul(&form("a'").add(&xn2.mul(&form("a1"))))
            .add(&xn2.mul(&form("b'")))
            .add(&form("b1")),
        XS => xn1.mul(&form("a2")).add(&form("b2")),
        XS2 => xn1.mul(&form("a3")).add(&form("b3")),
        XSSS => xn1.mul(&xn2).mul(&form("a4")).add(&form("b4")),
        X12 => xn1
            .mul(&form("a5"))
            .add(&xn2.mul(&form("b5")))
            .add(&form("c5")),
        XS11 => xn1.mul(&form("a6")).add(&form("b6")),
        X111 => xn1
            .mul(&form("a7"))
            .add(&xn2.mul(&form("b7")))
            .add(&form("c7")),
    };
    let line = match ty {
        X3 | XS | X12 => ProjLine::coordinate(n + 2, n - 1, n + 1),
        _ => ProjLine::coordinate(n + 2, n, n + 1),
    };
    Ok((CubicHypersurface::new(n, f)?, line))
}

/// Coefficient conditions guaranteeing the expected configuration.
fn check_draw(
    ty: VarietyType,
    n: usize,
    form: &dyn Fn(&str) -> MultiPoly,
) -> Result<(), ClassifyError> {
    let arity = n + 2;
    let m = |pairs: &[(usize, u32)]| {
        let mut e = vec![0u32; arity];
        for &(i, k) in pairs {
            e[i] += k;
        }
        e
    };
    let fail = |msg: &str| Err(ClassifyError::DegenerateDraw(msg.to_string()));
    use VarietyType::*;
    match ty {
        X3 => {
            if form("a1").coeff(&m(&[(n + 1, 1)])).is_zero() {
                return fail("a1 lacks its x_{n+2} coefficient");
            }
            if form("b'").is_zero() {
                return fail("b' vanished identically");
            }
        }
        XS => {
            if form("a2").coeff(&m(&[(n + 1, 2)])).is_zero() {
                return fail("a2 lacks its x_{n+2}^2 coefficient");
            }
        }
        XS2 => {
            if form("a3").coeff(&m(&[(n + 1, 2)])).is_zero() {
                return fail("a3 lacks its x_{n+2}^2 coefficient");
            }
            if (0..n).all(|j| form("a3").coeff(&m(&[(j, 1), (n, 1)])).is_zero()) {
                return fail("a3 lacks all x_j x_{n+1} coefficients");
            }
            if form("b3").is_zero() {
                return fail("b3 vanished identically");
            }
        }
        XSSS => {
            if form("a4").coeff(&m(&[(n, 1)])).is_zero()
                || form("a4").coeff(&m(&[(n + 1, 1)])).is_zero()
            {
                return fail("a4 lacks an x_{n+1} or x_{n+2} coefficient");
            }
        }
        X12 => {
            if form("b5").coeff(&m(&[(n - 1, 2)])).is_zero() {
                return fail("b5 lacks its x_n^2 coefficient");
            }
            if form("c5").coeff(&m(&[(n - 1, 3)])).is_zero() {
                return fail("c5 lacks its x_n^3 coefficient");
            }
            if form("a5").coeff(&m(&[(n + 1, 2)])).is_zero() {
                return fail("a5 lacks its x_{n+2}^2 coefficient");
            }
        }
        XS11 => {}
        X111 => {
            if form("b7").is_zero() {
                return fail("b7 vanished identically");
            }
        }
    }
    Ok(())
}

/// Normal form that retries consecutive seeds until the classification
/// round-trips; returns the instance and the skipped seeds.
pub fn generate(
    ty: VarietyType,
    n: usize,
    seed: u64,
    max_tries: u64,
) -> Result<(CubicHypersurface, ProjLine, Vec<u64>), ClassifyError> {
    let mut skipped = Vec::new();
    for s in seed..seed + max_tries {
        match normal_form(ty, n, s).and_then(|(y, l)| classify(&y, &l).map(|c| (y, l, c))) {
            Ok((y, l, c)) if c.ty == ty => return Ok((y, l, skipped)),
            Ok(_) | Err(ClassifyError::DegenerateDraw(_)) => skipped.push(s),
            Err(e) => return Err(e),
        }
    }
    Err(ClassifyError::DegenerateDraw(format!(
        "no admissible draw in {max_tries} consecutive seeds from {seed}"
    )))
}

// ---------------------------------------------------------------------------
// Instance parsing
// ---------------------------------------------------------------------------

fn parse_point(text: &str) -> Result<Vec<Rat>, ClassifyError> {
    text.split(',')
        .map(|tok| {
            Rat::from_str(tok.trim())
                .map_err(|e| ClassifyError::InputFormat(format!("bad coordinate {tok:?}: {e}")))
        })
        .collect()
}

/// Parses a classifier instance of the form
///
/// ```text
/// n = 3
/// cubic: x4^2*x5 + x1^3 - x2^3
/// line: 0, 0, 0, 1, 0 ; 0, 0, 0, 0, 1
/// ```
pub fn parse_instance(text: &str) -> Result<(CubicHypersurface, ProjLine), ClassifyError> {
    let mut n: Option<usize> = None;
    let mut cubic: Option<String> = None;
    let mut line: Option<String> = None;
    for raw in text.lines() {
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if let Some(rest) = l.strip_prefix("n") {
            if let Some(v) = rest.trim().strip_prefix('=') {
                n = Some(v.trim().parse().map_err(|e| {
                    ClassifyError::InputFormat(format!("bad dimension {v:?}: {e}"))
                })?);
                continue;
            }
        }
        if let Some(rest) = l.strip_prefix("cubic:") {
            cubic = Some(rest.trim().to_string());
            continue;
        }
        if let Some(rest) = l.strip_prefix("line:") {
            line = Some(rest.trim().to_string());
            continue;
        }
        return Err(ClassifyError::InputFormat(format!(
            "unrecognized line {l:?}"
        )));
    }
    let n = n.ok_or_else(|| ClassifyError::InputFormat("missing `n = <int>`".into()))?;
    let cubic = cubic.ok_or_else(|| ClassifyError::InputFormat("missing `cubic:`".into()))?;
    let line = line.ok_or_else(|| ClassifyError::InputFormat("missing `line:`".into()))?;
    let y = CubicHypersurface::parse(n, &cubic)?;
    let (p, q) = line
        .split_once(';')
        .ok_or_else(|| ClassifyError::InputFormat("line needs two points split by `;`".into()))?;
    let l = ProjLine::new(parse_point(p)?, parse_point(q)?)?;
    if l.p.len() != n + 2 {
        return Err(ClassifyError::ArityMismatch {
            got: l.p.len(),
            want: n + 2,
        });
    }
    Ok((y, l))
}
