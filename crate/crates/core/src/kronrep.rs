//! Representations of the Kronecker quiver `K_r` and dimension-vector arithmetic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmat::{Field, Matrix, PrimeField, Rationals};

/// A dimension vector `(dim M_1, dim M_2)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVec {
    pub d1: usize,
    pub d2: usize,
}

impl DimVec {
    pub const fn new(d1: usize, d2: usize) -> Self {
        DimVec { d1, d2 }
    }

    pub fn pair(self) -> (i128, i128) {
        (self.d1 as i128, self.d2 as i128)
    }

    /// Converts a signed pair, failing if either entry is negative.
    pub fn from_pair(x: (i128, i128)) -> Option<Self> {
        Some(DimVec { d1: usize::try_from(x.0).ok()?, d2: usize::try_from(x.1).ok()? })
    }

    /// `dim2 - d * dim1`.
    pub fn delta(self, d: usize) -> i64 {
        self.d2 as i64 - (d * self.d1) as i64
    }

    pub fn is_zero(self) -> bool {
        self.d1 == 0 && self.d2 == 0
    }
}

impl std::ops::Add for DimVec {
    type Output = DimVec;
    fn add(self, o: DimVec) -> DimVec {
        DimVec::new(self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d1, self.d2)
    }
}

/// `<x, y>_r = x1 y1 + x2 y2 - r x1 y2`.
pub fn euler_form(r: usize, x: DimVec, y: DimVec) -> i64 {
    let (x1, x2, y1, y2) = (x.d1 as i64, x.d2 as i64, y.d1 as i64, y.d2 as i64);
    x1 * y1 + x2 * y2 - r as i64 * x1 * y2
}

/// `q_r(x) = <x, x>_r`.
pub fn tits_form(r: usize, x: DimVec) -> i64 {
    let (a, b) = (x.d1 as i64, x.d2 as i64);
    a * a + b * b - r as i64 * a * b
}

/// `Phi_r^n x` with `Phi_r = ((r^2-1, -r), (r, -1))`.
pub fn coxeter_apply(r: usize, x: (i128, i128), n: i64) -> (i128, i128) {
    let mut v = x;
    for _ in 0..n.unsigned_abs() {
        v = if n >= 0 { sigma_step(r, sigma_step(r, v)) } else { sigma_inv_step(r, sigma_inv_step(r, v)) };
    }
    v
}

fn sigma_step(r: usize, (x, y): (i128, i128)) -> (i128, i128) {
    (r as i128 * x - y, x)
}

fn sigma_inv_step(r: usize, (x, y): (i128, i128)) -> (i128, i128) {
    (y, r as i128 * y - x)
}

/// `sigma_r^n x` with `sigma_r (x, y) = (r x - y, x)`.
pub fn sigma_dimvec(r: usize, x: (i128, i128), n: i64) -> (i128, i128) {
    let mut v = x;
    for _ in 0..n.unsigned_abs() {
        v = if n >= 0 { sigma_step(r, v) } else { sigma_inv_step(r, v) };
    }
    v
}

/// `a_0 = 0`, `a_1 = 1`, `a_{i+1} = r a_i - a_{i-1}`.
pub fn a_seq(r: usize, i: usize) -> u128 {
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 0..i {
        (a, b) = (b, r as u128 * b - a);
    }
    a
}

/// Where a representation came from. Rules that certify membership or
/// stability key off this tag.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum Provenance {
    Preprojective(usize),
    SigmaShift {
        base: Box<Provenance>,
        n: i64,
    },
    Schwarzenberger(usize),
    Hyperplane,
    TestModule,
    CokerPlane,
    Random(u64),
    ElementaryCertified,
    #[default]
    None,
}

impl Provenance {
    /// Provenance after applying `sigma^n` (negative `n` for `sigma^{-1}`).
    pub fn shifted(&self, n: i64) -> Provenance {
        if n == 0 {
            return self.clone();
        }
        match self {
            Provenance::None => Provenance::None,
            Provenance::Preprojective(i) => {
                let j = *i as i64 - n;
                if j >= 0 {
                    Provenance::Preprojective(j as usize)
                } else {
                    Provenance::None
                }
            }
            Provenance::SigmaShift { base, n: m } => base.shifted(m + n),
            other => Provenance::SigmaShift { base: Box::new(other.clone()), n },
        }
    }

    /// Splits into base tag and total shift.
    pub fn base_and_shift(&self) -> (&Provenance, i64) {
        match self {
            Provenance::SigmaShift { base, n } => (base, *n),
            other => (other, 0),
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Preprojective(i) => write!(f, "preprojective({i})"),
            Provenance::SigmaShift { base, n } => write!(f, "sigma-shift({base},{n})"),
            Provenance::Schwarzenberger(m) => write!(f, "schwarzenberger({m})"),
            Provenance::Hyperplane => write!(f, "hyperplane"),
            Provenance::TestModule => write!(f, "test-module"),
            Provenance::CokerPlane => write!(f, "coker-plane"),
            Provenance::Random(s) => write!(f, "random({s})"),
            Provenance::ElementaryCertified => write!(f, "elementary-certified"),
            Provenance::None => write!(f, "none"),
        }
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown provenance {s:?}"));
        let s = s.trim();
        let simple = match s {
            "hyperplane" => Some(Provenance::Hyperplane),
            "test-module" => Some(Provenance::TestModule),
            "coker-plane" => Some(Provenance::CokerPlane),
            "elementary-certified" => Some(Provenance::ElementaryCertified),
            "none" | "" => Some(Provenance::None),
            _ => None,
        };
        if let Some(p) = simple {
            return Ok(p);
        }
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        match head {
            "preprojective" => Ok(Provenance::Preprojective(inner.parse().map_err(|_| bad())?)),
            "schwarzenberger" => Ok(Provenance::Schwarzenberger(inner.parse().map_err(|_| bad())?)),
            "random" => Ok(Provenance::Random(inner.parse().map_err(|_| bad())?)),
            "sigma-shift" => {
                let (base, n) = inner.rsplit_once(',').ok_or_else(bad)?;
                Ok(Provenance::SigmaShift { base: Box::new(base.parse()?), n: n.parse().map_err(|_| bad())? })
            }
            _ => Err(bad()),
        }
    }
}

/// A representation of `K_r`: spaces of dimensions `dim1`, `dim2` and `r`
/// linear maps `M(gamma_i)`, each `dim2 x dim1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KronRep<F: Field> {
    field: F,
    dim1: usize,
    dim2: usize,
    maps: Vec<Matrix<F>>,
    provenance: Provenance,
}

pub type QRep = KronRep<Rationals>;
pub type FpRep = KronRep<PrimeField>;

impl<F: Field> KronRep<F> {
    /// Validates `r` maps of equal shape over `field`.
    pub fn new(r: usize, field: &F, maps: Vec<Matrix<F>>) -> Result<Self> {
        if maps.is_empty() || maps.len() != r {
            return Err(Error::ShapeMismatch(format!("expected {r} maps, got {}", maps.len())));
        }
        let (dim2, dim1) = maps[0].shape();
        for (i, m) in maps.iter().enumerate() {
            if m.field() != field {
                return Err(Error::FieldMismatch(format!("map {} is over {}", i + 1, m.field().spec())));
            }
            if m.shape() != (dim2, dim1) {
                return Err(Error::ShapeMismatch(format!(
                    "map {} has shape {:?}, expected {:?}",
                    i + 1,
                    m.shape(),
                    (dim2, dim1)
                )));
            }
        }
        Ok(KronRep { field: field.clone(), dim1, dim2, maps, provenance: Provenance::None })
    }

    pub(crate) fn from_parts(
        field: &F,
        dim1: usize,
        dim2: usize,
        maps: Vec<Matrix<F>>,
        provenance: Provenance,
    ) -> Self {
        debug_assert!(maps.iter().all(|m| m.shape() == (dim2, dim1)));
        KronRep { field: field.clone(), dim1, dim2, maps, provenance }
    }

    pub fn zero(field: &F, r: usize, dim1: usize, dim2: usize) -> Self {
        let maps = vec![Matrix::zeros(field, dim2, dim1); r];
        KronRep { field: field.clone(), dim1, dim2, maps, provenance: Provenance::None }
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    pub fn r(&self) -> usize {
        self.maps.len()
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim1(&self) -> usize {
        self.dim1
    }
    pub fn dim2(&self) -> usize {
        self.dim2
    }
    pub fn dim_vec(&self) -> DimVec {
        DimVec::new(self.dim1, self.dim2)
    }
    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }
    pub fn map(&self, i: usize) -> &Matrix<F> {
        &self.maps[i]
    }
    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
    pub fn is_zero(&self) -> bool {
        self.dim1 == 0 && self.dim2 == 0
    }

    /// `dim2 - d dim1` for `1 <= d <= r`.
    pub fn delta(&self, d: usize) -> Result<i64> {
        if d == 0 || d > self.r() {
            return Err(Error::BadD { r: self.r(), d });
        }
        Ok(self.dim_vec().delta(d))
    }

    /// The block matrix `psi_M = [M(gamma_1) | ... | M(gamma_r)]`.
    pub fn psi(&self) -> Matrix<F> {
        let parts: Vec<&Matrix<F>> = self.maps.iter().collect();
        Matrix::hstack(&self.field, self.dim2, &parts)
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.r() != other.r() {
            return Err(Error::Mismatch(format!("r = {} vs r = {}", self.r(), other.r())));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field.spec(), other.field.spec())));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect();
        Ok(KronRep {
            field: self.field.clone(),
            dim1: self.dim1 + other.dim1,
            dim2: self.dim2 + other.dim2,
            maps,
            provenance: Provenance::None,
        })
    }

    /// `n` copies of `self`.
    pub fn power(&self, n: usize) -> Self {
        let mut out = KronRep::zero(&self.field, self.r(), 0, 0);
        for _ in 0..n {
            out = out.direct_sum(self).expect("same quiver");
        }
        out
    }

    /// The dual representation, with transposed maps.
    pub fn dual(&self) -> Self {
        KronRep {
            field: self.field.clone(),
            dim1: self.dim2,
            dim2: self.dim1,
            maps: self.maps.iter().map(Matrix::transpose).collect(),
            provenance: Provenance::None,
        }
    }

    /// Recombines the maps by `g^{-1} = (a_ij)`: `M^(g)(gamma_j) = sum_i a_ij M(gamma_i)`.
    pub fn twist(&self, g: &Matrix<F>) -> Result<Self> {
        let r = self.r();
        if g.shape() != (r, r) {
            return Err(Error::ShapeMismatch(format!("group element must be {r}x{r}")));
        }
        let a = g.inverse().ok_or(Error::Singular)?;
        let maps = (0..r).map(|j| self.combine((0..r).map(|i| a.get(i, j).clone()))).collect();
        Ok(KronRep { field: self.field.clone(), dim1: self.dim1, dim2: self.dim2, maps, provenance: Provenance::None })
    }

    /// `sum_i c_i M(gamma_i)`.
    pub fn combine(&self, coeffs: impl IntoIterator<Item = F::Elem>) -> Matrix<F> {
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.dim2, self.dim1);
        for (c, m) in coeffs.into_iter().zip(&self.maps) {
            if f.is_zero(&c) {
                continue;
            }
            for (o, x) in out.data_mut().iter_mut().zip(m.data()) {
                if !f.is_zero(x) {
                    *o = f.add(o, &f.mul(&c, x));
                }
            }
        }
        out
    }

    /// Extends a representation of `K_s` to `K_r` by zero maps.
    pub fn inflate(&self, r: usize) -> Result<Self> {
        if self.r() >= r {
            return Err(Error::BadRange(format!("cannot inflate from K_{} to K_{r}", self.r())));
        }
        let mut maps = self.maps.clone();
        maps.resize(r, Matrix::zeros(&self.field, self.dim2, self.dim1));
        Ok(KronRep { field: self.field.clone(), dim1: self.dim1, dim2: self.dim2, maps, provenance: Provenance::None })
    }
}

impl<F: Field> KronRep<F> {
    /// Entrywise reduction to `F_p`; `None` if some entry has no image
    /// (a denominator divisible by `p`, or a different prime field).
    pub fn reduce_mod(&self, fp: &PrimeField) -> Option<FpRep> {
        let maps = self
            .maps
            .iter()
            .map(|m| {
                let data: Option<Vec<u32>> = m.data().iter().map(|q| self.field.reduce_mod_p(q, fp)).collect();
                Some(Matrix::from_vec(fp, m.rows(), m.cols(), data?))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(KronRep::from_parts(fp, self.dim1, self.dim2, maps, self.provenance.clone()))
    }
}

/// A representation over either supported field, for code paths chosen at run time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyRep {
    Q(QRep),
    Fp(FpRep),
}

/// Runs an expression generically on the representation inside an [`AnyRep`].
#[macro_export]
macro_rules! with_rep {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            $crate::kronrep::AnyRep::Q($m) => $body,
            $crate::kronrep::AnyRep::Fp($m) => $body,
        }
    };
}

impl AnyRep {
    pub fn r(&self) -> usize {
        with_rep!(self, m => m.r())
    }
    pub fn dim_vec(&self) -> DimVec {
        with_rep!(self, m => m.dim_vec())
    }
    pub fn provenance(&self) -> &Provenance {
        with_rep!(self, m => m.provenance())
    }
}

impl From<QRep> for AnyRep {
    fn from(m: QRep) -> Self {
        AnyRep::Q(m)
    }
}

impl From<FpRep> for AnyRep {
    fn from(m: FpRep) -> Self {
        AnyRep::Fp(m)
    }
}
