//! Hom and Ext^1 between representations, extensions, and Hom fingerprints.
//!
//! Hom(M, N) is the solution space of `N(gamma_i) f1 = f2 M(gamma_i)`. Rather
//! than eliminating on all `(f1, f2)` unknowns at once, `f1` is solved for
//! first (it must kill `ker psi_M` after composing with `psi_N`), then `f2` is
//! read off on `im psi_M` and left free on a complement. The resulting basis is
//! rewritten into the canonical kernel form of the full system, so the output
//! matches a direct RREF computation bit for bit.
//!
//! Ext^1(N, M) is the cokernel of `(f1, f2) -> (M_i f1 - f2 N_i)_i`. Dividing
//! out the `f2` part first leaves `Hom(ker psi_N, M_2)` modulo the image of `f1`.

use crate::error::{Error, Result};
use crate::exactmat::{Field, Matrix};
use crate::kronrep::{DimVec, KronRep};

/// A morphism `(f1, f2)` of representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPair<F: Field> {
    pub f1: Matrix<F>,
    pub f2: Matrix<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace<F: Field> {
    pub source: DimVec,
    pub target: DimVec,
    pub basis: Vec<HomPair<F>>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A class in Ext^1(N, M) given by a cocycle `(g_i)`, each `M.dim2 x N.dim1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ext1Class<F: Field> {
    pub cocycle: Vec<Matrix<F>>,
    /// Position of the single nonzero entry for canonical basis classes.
    pub index: Option<usize>,
}

impl<F: Field> Ext1Class<F> {
    pub fn zero(field: &F, r: usize, rows: usize, cols: usize) -> Self {
        Ext1Class { cocycle: vec![Matrix::zeros(field, rows, cols); r], index: None }
    }

    pub fn is_zero(&self) -> bool {
        self.cocycle.iter().all(Matrix::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ext1Space<F: Field> {
    pub classes: Vec<Ext1Class<F>>,
}

impl<F: Field> Ext1Space<F> {
    pub fn dim(&self) -> usize {
        self.classes.len()
    }
}

/// Matrix of `f1 -> (k_t -> sum_i X_i f1 k_{t,i})` from `x1 x y1` matrices to
/// `kappa x2`-vectors. Rows are indexed `(t, c)`, columns `(a, b)`.
fn kernel_pairing<F: Field>(x: &KronRep<F>, kernel: &Matrix<F>, y1: usize) -> Matrix<F> {
    let f = x.field();
    let (x1, x2) = (x.dim1(), x.dim2());
    let kappa = kernel.rows();
    let mut out = Matrix::zeros(f, kappa * x2, x1 * y1);
    for t in 0..kappa {
        let k = kernel.row(t);
        for (i, xi) in x.maps().iter().enumerate() {
            for b in 0..y1 {
                let kb = &k[i * y1 + b];
                if f.is_zero(kb) {
                    continue;
                }
                for c in 0..x2 {
                    for a in 0..x1 {
                        let v = xi.get(c, a);
                        if f.is_zero(v) {
                            continue;
                        }
                        let (row, col) = (t * x2 + c, a * y1 + b);
                        let cur = out.get(row, col).clone();
                        out.set(row, col, f.add(&cur, &f.mul(v, kb)));
                    }
                }
            }
        }
    }
    out
}

struct HomData<F: Field> {
    f1_solutions: Matrix<F>,
    psi_pivots: Vec<usize>,
    complement: Vec<usize>,
    b_inv: Matrix<F>,
}

fn hom_data<F: Field>(m: &KronRep<F>, n: &KronRep<F>) -> HomData<F> {
    let f = m.field();
    let psi = m.psi();
    let rref = psi.rref();
    let kernel = crate::exactmat::kernel_from_rref(&rref.matrix, &rref.pivots);
    let f1_solutions = if kernel.rows() == 0 || n.dim2() == 0 {
        Matrix::identity(f, n.dim1() * m.dim1())
    } else {
        kernel_pairing(n, &kernel, m.dim1()).kernel_rows()
    };
    let complement = psi.cokernel_indices();
    let mut b = Matrix::zeros(f, m.dim2(), m.dim2());
    for (s, &q) in rref.pivots.iter().enumerate() {
        for row in 0..m.dim2() {
            b.set(row, s, psi.get(row, q).clone());
        }
    }
    for (s, &c) in complement.iter().enumerate() {
        b.set(c, rref.pivots.len() + s, f.one());
    }
    let b_inv = b.inverse().expect("pivot columns and complement form a basis");
    HomData { f1_solutions, psi_pivots: rref.pivots, complement, b_inv }
}

pub fn hom_dim<F: Field>(m: &KronRep<F>, n: &KronRep<F>) -> Result<usize> {
    m.check_compatible(n)?;
    let psi = m.psi();
    let rank = psi.rank();
    let kappa = m.r() * m.dim1() - rank;
    let free_f1 = if kappa == 0 || n.dim2() == 0 {
        n.dim1() * m.dim1()
    } else {
        let kernel = psi.kernel_rows();
        n.dim1() * m.dim1() - kernel_pairing(n, &kernel, m.dim1()).rank()
    };
    Ok(free_f1 + (m.dim2() - rank) * n.dim2())
}

/// Canonical basis of Hom(M, N).
pub fn hom_space<F: Field>(m: &KronRep<F>, n: &KronRep<F>) -> Result<HomSpace<F>> {
    m.check_compatible(n)?;
    let f = m.field();
    let (m1, m2, n1, n2) = (m.dim1(), m.dim2(), n.dim1(), n.dim2());
    let HomData { f1_solutions, psi_pivots, complement, b_inv } = hom_data(m, n);
    let width = n1 * m1 + n2 * m2;
    let count = f1_solutions.rows() + complement.len() * n2;
    let mut vecs = Matrix::zeros(f, count, width);
    let mut row = 0;
    for s in 0..f1_solutions.rows() {
        let f1 = Matrix::from_vec(f, n1, m1, f1_solutions.row(s).to_vec());
        // D holds f2 on the basis (pivot columns of psi_M, complement vectors).
        let mut d = Matrix::zeros(f, n2, m2);
        for (t, &q) in psi_pivots.iter().enumerate() {
            let (i, b) = (q / m1, q % m1);
            let col = n.map(i).mul_vec(&f1.column(b));
            for (c, v) in col.into_iter().enumerate() {
                d.set(c, t, v);
            }
        }
        let f2 = d.mul(&b_inv);
        let out = vecs.row_mut(row);
        out[..n1 * m1].clone_from_slice(f1.data());
        out[n1 * m1..].clone_from_slice(f2.data());
        row += 1;
    }
    for s in 0..complement.len() {
        let src = b_inv.row(psi_pivots.len() + s).to_vec();
        for a in 0..n2 {
            let out = vecs.row_mut(row);
            let off = n1 * m1 + a * m2;
            out[off..off + m2].clone_from_slice(&src);
            row += 1;
        }
    }
    let canon = vecs.canonical_kernel_form();
    let basis = (0..canon.rows())
        .map(|t| {
            let v = canon.row(t);
            HomPair {
                f1: Matrix::from_vec(f, n1, m1, v[..n1 * m1].to_vec()),
                f2: Matrix::from_vec(f, n2, m2, v[n1 * m1..].to_vec()),
            }
        })
        .collect();
    Ok(HomSpace { source: m.dim_vec(), target: n.dim_vec(), basis })
}

/// True when `(f1, f2)` intertwines `M` and `N`.
pub fn is_morphism<F: Field>(m: &KronRep<F>, n: &KronRep<F>, h: &HomPair<F>) -> bool {
    m.maps().iter().zip(n.maps()).all(|(mi, ni)| ni.mul(&h.f1) == h.f2.mul(mi))
}

pub fn end_dim<F: Field>(m: &KronRep<F>) -> usize {
    hom_dim(m, m).expect("compatible with itself")
}

pub fn is_brick<F: Field>(m: &KronRep<F>) -> bool {
    end_dim(m) == 1
}

pub fn ext1_dim<F: Field>(n: &KronRep<F>, m: &KronRep<F>) -> Result<usize> {
    n.check_compatible(m)?;
    let kernel = n.psi().kernel_rows();
    let kappa = kernel.rows();
    if kappa == 0 || m.dim2() == 0 {
        return Ok(0);
    }
    let pairing = kernel_pairing(m, &kernel, n.dim1());
    Ok(kappa * m.dim2() - pairing.rank())
}

/// Canonical basis of Ext^1(N, M): the standard cocycles `e_j` whose indices
/// are not leading positions of the coboundary space.
pub fn ext1_space<F: Field>(n: &KronRep<F>, m: &KronRep<F>) -> Result<Ext1Space<F>> {
    n.check_compatible(m)?;
    let f = n.field();
    let (r, n1, m2) = (n.r(), n.dim1(), m.dim2());
    let kernel = n.psi().kernel_rows();
    let kappa = kernel.rows();
    if kappa == 0 || m2 == 0 {
        return Ok(Ext1Space { classes: Vec::new() });
    }
    let pairing = kernel_pairing(m, &kernel, n1);
    let image = pairing.transpose().row_space();
    let target = kappa * m2 - image.rows();
    let image_pivots: Vec<usize> =
        (0..image.rows()).map(|t| image.row(t).iter().position(|x| !f.is_zero(x)).expect("nonzero row")).collect();

    let normal_form = |v: &mut Vec<F::Elem>| {
        for (t, &q) in image_pivots.iter().enumerate() {
            if f.is_zero(&v[q]) {
                continue;
            }
            let c = v[q].clone();
            for (x, y) in v.iter_mut().zip(image.row(t)) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
    };

    let block = m2 * n1;
    let mut found: Vec<usize> = Vec::new();
    let mut echelon: Vec<(usize, Vec<F::Elem>)> = Vec::new();
    let mut j = r * block;
    while j > 0 && found.len() < target {
        j -= 1;
        let (i, a, b) = (j / block, (j % block) / n1, j % n1);
        let mut v = vec![f.zero(); kappa * m2];
        for t in 0..kappa {
            v[t * m2 + a] = kernel.get(t, i * n1 + b).clone();
        }
        normal_form(&mut v);
        for (q, row) in &echelon {
            if f.is_zero(&v[*q]) {
                continue;
            }
            let c = v[*q].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        if let Some(q) = v.iter().position(|x| !f.is_zero(x)) {
            let inv = f.inv(&v[q]).expect("nonzero");
            for x in v.iter_mut() {
                *x = f.mul(x, &inv);
            }
            echelon.push((q, v));
            found.push(j);
        }
    }
    found.reverse();
    let classes = found.into_iter().map(|j| standard_class(f, r, m2, n1, j)).collect();
    Ok(Ext1Space { classes })
}

fn standard_class<F: Field>(f: &F, r: usize, rows: usize, cols: usize, j: usize) -> Ext1Class<F> {
    let mut cls = Ext1Class::zero(f, r, rows, cols);
    let block = rows * cols;
    cls.cocycle[j / block].data_mut()[j % block] = f.one();
    cls.index = Some(j);
    cls
}

/// The extension `0 -> M -> E -> N -> 0` with `E(gamma_i) = [[M_i, g_i], [0, N_i]]`.
pub fn middle_term<F: Field>(m: &KronRep<F>, n: &KronRep<F>, cls: &Ext1Class<F>) -> Result<KronRep<F>> {
    m.check_compatible(n)?;
    let f = m.field();
    let (m1, m2, n1, n2) = (m.dim1(), m.dim2(), n.dim1(), n.dim2());
    if cls.cocycle.len() != m.r() || cls.cocycle.iter().any(|g| g.shape() != (m2, n1)) {
        return Err(Error::ShapeMismatch(format!("cocycle must consist of {} matrices of shape {m2}x{n1}", m.r())));
    }
    let maps = (0..m.r())
        .map(|i| {
            let mut e = Matrix::zeros(f, m2 + n2, m1 + n1);
            e.set_block(0, 0, m.map(i));
            e.set_block(0, m1, &cls.cocycle[i]);
            e.set_block(m2, m1, n.map(i));
            e
        })
        .collect();
    KronRep::new(m.r(), f, maps)
}

/// `(dim Hom(P, M))_P` over the probes.
pub fn hom_fingerprint<F: Field>(m: &KronRep<F>, probes: &[KronRep<F>]) -> Result<Vec<usize>> {
    probes.iter().map(|p| hom_dim(p, m)).collect()
}
