//! Finite-dimensional unital associative algebras presented by structure
//! constants, together with Wedderburn block certificates.
//!
//! An algebra is the data `e_i · e_j = Σ_k c[i][j][k] e_k` plus the unit
//! vector. A [`WedderburnCertificate`] exhibits the block decomposition of
//! a semisimple algebra: central primitive idempotents and one simple
//! right module per block, given by its action tensor. Certificates are
//! propagated by every constructor that can (matrix algebras, products,
//! tensor products, opposites); the from-scratch [`Algebra::wedderburn`]
//! search is a seeded, retry-bounded convenience for algebras that split
//! over the rationals.

use crate::error::{Error, Result};
use crate::mat::{EchelonSpan, Mat, Subspace};
use crate::poly::{self, Poly};
use crate::scalar::{rat, ratio, scalar_from_str, scalar_to_string, Scalar};
use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A simple right module over an algebra, as its right-action tensor:
/// one `dim × dim` matrix per basis element of the algebra, where
/// `action[k]` is the matrix of `s ↦ s · e_k` on column coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleModule {
    pub dim: usize,
    pub action: Vec<Mat>,
}

/// One Wedderburn block: a central primitive idempotent and a simple
/// right module of dimension `dim` supported on that block.
#[derive(Clone, Debug, PartialEq)]
pub struct CertBlock {
    pub idempotent: Vec<Scalar>,
    pub dim: usize,
    pub simple: SimpleModule,
}

/// Explicit witness of the block decomposition of a split semisimple
/// algebra: orthogonal central primitive idempotents summing to the unit,
/// with `Σ dim_i² = dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct WedderburnCertificate {
    pub blocks: Vec<CertBlock>,
}

impl WedderburnCertificate {
    pub fn block_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.dim).collect()
    }
}

/// Structure-constant presentation of a finite-dimensional unital
/// associative algebra over the rationals.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub dim: usize,
    /// Flat `dim³` tensor, index `((i · dim) + j) · dim + k`.
    mult: Vec<Scalar>,
    pub unit: Vec<Scalar>,
    pub certificate: Option<WedderburnCertificate>,
    pub label: String,
}

/// Outcome of [`Algebra::validate`].
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    /// `(i, j, k)` triples where associativity fails.
    pub associativity_defects: Vec<(usize, usize, usize)>,
    /// Basis indices where a unit law fails.
    pub unit_defects: Vec<usize>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.associativity_defects.is_empty() && self.unit_defects.is_empty()
    }
}

impl Algebra {
    /// Builds and validates an algebra from raw structure constants; no
    /// certificate is attached.
    pub fn from_structure_constants(
        label: &str,
        dim: usize,
        mult: Vec<Scalar>,
        unit: Vec<Scalar>,
    ) -> Result<Algebra> {
        if mult.len() != dim * dim * dim || unit.len() != dim {
            return Err(Error::Invalid(format!(
                "structure constants for `{label}` have the wrong shape"
            )));
        }
        let alg = Algebra { dim, mult, unit, certificate: None, label: label.to_string() };
        let report = alg.validate();
        if !report.is_ok() {
            return Err(Error::Invalid(format!(
                "`{label}` violates algebra axioms: {} associativity defects, {} unit defects",
                report.associativity_defects.len(),
                report.unit_defects.len()
            )));
        }
        Ok(alg)
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.mult[(i * self.dim + j) * self.dim + k]
    }

    fn set_c(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        self.mult[(i * self.dim + j) * self.dim + k] = v;
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for k in 0..n {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&uv * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by basis element `i`.
    pub fn left_mult_mat(&self, i: usize) -> Mat {
        Mat::from_fn(self.dim, self.dim, |k, j| self.c(i, j, k).clone())
    }

    /// Matrix of right multiplication by basis element `i` (`x ↦ x · e_i`).
    pub fn right_mult_mat(&self, i: usize) -> Mat {
        Mat::from_fn(self.dim, self.dim, |k, j| self.c(j, i, k).clone())
    }

    pub fn left_mult_of(&self, u: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for (i, ui) in u.iter().enumerate() {
            if !ui.is_zero() {
                m = m.add(&self.left_mult_mat(i).scale(ui));
            }
        }
        m
    }

    pub fn right_mult_of(&self, u: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for (i, ui) in u.iter().enumerate() {
            if !ui.is_zero() {
                m = m.add(&self.right_mult_mat(i).scale(ui));
            }
        }
        m
    }

    /// Exact check of associativity and the unit laws.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        let mut report = ValidationReport::default();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for q in 0..n {
                        let lhs: Scalar =
                            (0..n).map(|p| self.c(i, j, p) * self.c(p, k, q)).sum();
                        let rhs: Scalar =
                            (0..n).map(|p| self.c(j, k, p) * self.c(i, p, q)).sum();
                        if lhs != rhs {
                            report.associativity_defects.push((i, j, k));
                            break;
                        }
                    }
                }
            }
        }
        let mut basis = vec![Scalar::zero(); n];
        for j in 0..n {
            basis[j] = Scalar::one();
            let left = self.multiply(&self.unit, &basis);
            let right = self.multiply(&basis, &self.unit);
            if left != basis || right != basis {
                report.unit_defects.push(j);
            }
            basis[j] = Scalar::zero();
        }
        report
    }

    /// Structural equality as an object: same constants and unit. Labels
    /// are ignored so transported objects compare equal.
    pub fn same_as(&self, other: &Algebra) -> bool {
        self.dim == other.dim && self.mult == other.mult && self.unit == other.unit
    }

    /// The full matrix algebra of `d × d` rational matrices, with basis
    /// the matrix units in row-major order and its certificate attached.
    pub fn matrix_algebra(d: usize) -> Algebra {
        assert!(d >= 1);
        let n = d * d;
        let mut alg = Algebra {
            dim: n,
            mult: vec![Scalar::zero(); n * n * n],
            unit: vec![Scalar::zero(); n],
            certificate: None,
            label: format!("M{d}(Q)"),
        };
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for e in 0..d {
                        if b == c {
                            alg.set_c(a * d + b, c * d + e, a * d + e, Scalar::one());
                        }
                    }
                }
            }
        }
        for a in 0..d {
            alg.unit[a * d + a] = Scalar::one();
        }
        // The simple right module is the row space: f_j · E_{ab} = δ_{ja} f_b.
        let action: Vec<Mat> = (0..n)
            .map(|idx| {
                let (a, b) = (idx / d, idx % d);
                let mut m = Mat::zeros(d, d);
                m.set(b, a, Scalar::one());
                m
            })
            .collect();
        alg.certificate = Some(WedderburnCertificate {
            blocks: vec![CertBlock {
                idempotent: alg.unit.clone(),
                dim: d,
                simple: SimpleModule { dim: d, action },
            }],
        });
        alg
    }

    /// The rationals as a one-dimensional algebra.
    pub fn rational() -> Algebra {
        let mut alg = Algebra::matrix_algebra(1);
        alg.label = "Q".to_string();
        alg
    }

    /// Direct product, basis of `a` first; certificates concatenate.
    pub fn product(a: &Algebra, b: &Algebra) -> Algebra {
        let n = a.dim + b.dim;
        let mut alg = Algebra {
            dim: n,
            mult: vec![Scalar::zero(); n * n * n],
            unit: Vec::with_capacity(n),
            certificate: None,
            label: format!("{}x{}", a.label, b.label),
        };
        for i in 0..a.dim {
            for j in 0..a.dim {
                for k in 0..a.dim {
                    alg.set_c(i, j, k, a.c(i, j, k).clone());
                }
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                for k in 0..b.dim {
                    alg.set_c(a.dim + i, a.dim + j, a.dim + k, b.c(i, j, k).clone());
                }
            }
        }
        alg.unit.extend(a.unit.iter().cloned());
        alg.unit.extend(b.unit.iter().cloned());
        if let (Some(ca), Some(cb)) = (&a.certificate, &b.certificate) {
            let mut blocks = Vec::new();
            for blk in &ca.blocks {
                let mut idem = blk.idempotent.clone();
                idem.extend(vec![Scalar::zero(); b.dim]);
                let mut action = blk.simple.action.clone();
                action.extend((0..b.dim).map(|_| Mat::zeros(blk.dim, blk.dim)));
                blocks.push(CertBlock {
                    idempotent: idem,
                    dim: blk.dim,
                    simple: SimpleModule { dim: blk.dim, action },
                });
            }
            for blk in &cb.blocks {
                let mut idem = vec![Scalar::zero(); a.dim];
                idem.extend(blk.idempotent.iter().cloned());
                let mut action: Vec<Mat> =
                    (0..a.dim).map(|_| Mat::zeros(blk.dim, blk.dim)).collect();
                action.extend(blk.simple.action.iter().cloned());
                blocks.push(CertBlock {
                    idempotent: idem,
                    dim: blk.dim,
                    simple: SimpleModule { dim: blk.dim, action },
                });
            }
            alg.certificate = Some(WedderburnCertificate { blocks });
        }
        alg
    }

    /// Group algebra of the elementary abelian 2-group on `k` generators.
    /// Basis elements are group elements indexed by bitmask; the blocks
    /// are cut out by the `2^k` character idempotents.
    pub fn group_algebra_elementary_2(k: u32) -> Algebra {
        let n = 1usize << k;
        let mut alg = Algebra {
            dim: n,
            mult: vec![Scalar::zero(); n * n * n],
            unit: vec![Scalar::zero(); n],
            certificate: None,
            label: format!("Q[C2^{k}]"),
        };
        for s in 0..n {
            for t in 0..n {
                alg.set_c(s, t, s ^ t, Scalar::one());
            }
        }
        alg.unit[0] = Scalar::one();
        let chi = |u: usize, s: usize| -> Scalar {
            if (u & s).count_ones() % 2 == 0 {
                Scalar::one()
            } else {
                -Scalar::one()
            }
        };
        let scale = ratio(1, n as i64);
        let blocks = (0..n)
            .map(|u| {
                let idempotent: Vec<Scalar> = (0..n).map(|s| chi(u, s) * &scale).collect();
                let action: Vec<Mat> =
                    (0..n).map(|s| Mat::from_fn(1, 1, |_, _| chi(u, s))).collect();
                CertBlock { idempotent, dim: 1, simple: SimpleModule { dim: 1, action } }
            })
            .collect();
        alg.certificate = Some(WedderburnCertificate { blocks });
        alg
    }

    /// The dual numbers `Q[x]/(x²)` — the canonical non-semisimple corpus
    /// entry. No certificate exists.
    pub fn dual_numbers() -> Algebra {
        let mut alg = Algebra {
            dim: 2,
            mult: vec![Scalar::zero(); 8],
            unit: vec![Scalar::one(), Scalar::zero()],
            certificate: None,
            label: "Q[x]/(x^2)".to_string(),
        };
        alg.set_c(0, 0, 0, Scalar::one());
        alg.set_c(0, 1, 1, Scalar::one());
        alg.set_c(1, 0, 1, Scalar::one());
        alg
    }

    /// Opposite algebra: `c°[i][j][k] = c[j][i][k]`, same unit. The
    /// certificate is transported: idempotents are unchanged and each
    /// simple is replaced by its dual module, so `Rep` of the opposite
    /// stays aligned with duals of simples.
    pub fn opposite(&self) -> Algebra {
        let n = self.dim;
        let mut alg = Algebra {
            dim: n,
            mult: vec![Scalar::zero(); n * n * n],
            unit: self.unit.clone(),
            certificate: None,
            label: format!("op({})", self.label),
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.c(j, i, k).clone();
                    if !v.is_zero() {
                        alg.set_c(i, j, k, v);
                    }
                }
            }
        }
        if let Some(cert) = &self.certificate {
            let blocks = cert
                .blocks
                .iter()
                .map(|blk| CertBlock {
                    idempotent: blk.idempotent.clone(),
                    dim: blk.dim,
                    simple: dual_simple(self, &blk.simple),
                })
                .collect();
            alg.certificate = Some(WedderburnCertificate { blocks });
        }
        alg
    }

    /// Tensor product over the rationals, structure constants in the
    /// fixed lexicographic Kronecker order. The certificate is present
    /// iff both inputs carry one (blocks pair up, dimensions multiply).
    pub fn tensor(a: &Algebra, b: &Algebra) -> Algebra {
        let n = a.dim * b.dim;
        let mut alg = Algebra {
            dim: n,
            mult: vec![Scalar::zero(); n * n * n],
            unit: vec![Scalar::zero(); n],
            certificate: None,
            label: format!("({})(x)({})", a.label, b.label),
        };
        let idx = |p: usize, q: usize| p * b.dim + q;
        for p in 0..a.dim {
            for r in 0..a.dim {
                for t in 0..a.dim {
                    let ca = a.c(p, r, t);
                    if ca.is_zero() {
                        continue;
                    }
                    for q in 0..b.dim {
                        for s in 0..b.dim {
                            for u in 0..b.dim {
                                let cb = b.c(q, s, u);
                                if !cb.is_zero() {
                                    alg.set_c(idx(p, q), idx(r, s), idx(t, u), ca * cb);
                                }
                            }
                        }
                    }
                }
            }
        }
        for p in 0..a.dim {
            if a.unit[p].is_zero() {
                continue;
            }
            for q in 0..b.dim {
                if !b.unit[q].is_zero() {
                    alg.unit[idx(p, q)] = &a.unit[p] * &b.unit[q];
                }
            }
        }
        if let (Some(ca), Some(cb)) = (&a.certificate, &b.certificate) {
            let mut blocks = Vec::new();
            for ba in &ca.blocks {
                for bb in &cb.blocks {
                    let mut idem = vec![Scalar::zero(); n];
                    for p in 0..a.dim {
                        if ba.idempotent[p].is_zero() {
                            continue;
                        }
                        for q in 0..b.dim {
                            if !bb.idempotent[q].is_zero() {
                                idem[idx(p, q)] = &ba.idempotent[p] * &bb.idempotent[q];
                            }
                        }
                    }
                    let action: Vec<Mat> = (0..n)
                        .map(|g| {
                            let (p, q) = (g / b.dim, g % b.dim);
                            ba.simple.action[p].kron(&bb.simple.action[q])
                        })
                        .collect();
                    blocks.push(CertBlock {
                        idempotent: idem,
                        dim: ba.dim * bb.dim,
                        simple: SimpleModule { dim: ba.dim * bb.dim, action },
                    });
                }
            }
            alg.certificate = Some(WedderburnCertificate { blocks });
        }
        alg
    }

    /// Semisimplicity via the trace form of the left regular
    /// representation: the radical of `(i, j) ↦ tr(L_i L_j)` equals the
    /// Jacobson radical in characteristic zero.
    pub fn is_semisimple(&self) -> (bool, Subspace) {
        let left: Vec<Mat> = (0..self.dim).map(|i| self.left_mult_mat(i)).collect();
        let gram = Mat::from_fn(self.dim, self.dim, |i, j| left[i].mul(&left[j]).trace());
        let radical = gram.kernel_basis();
        (radical.dim() == 0, radical)
    }

    /// Basis of the center, solved from `az = za` for all basis `a`.
    pub fn center_basis(&self) -> Mat {
        let mut constraints = Mat::zeros(0, self.dim);
        for i in 0..self.dim {
            let diff = self.left_mult_mat(i).sub(&self.right_mult_mat(i));
            constraints = constraints.vstack(&diff);
        }
        constraints.kernel_basis().basis
    }

    /// A small unital generating set, found greedily: repeatedly adjoin
    /// the first basis vector outside the subalgebra generated so far.
    /// Used to cut down relation generators in tensor products.
    pub fn generating_set(&self) -> Vec<Vec<Scalar>> {
        let n = self.dim;
        let mut gens: Vec<Vec<Scalar>> = Vec::new();
        loop {
            let span = self.unital_closure(&gens);
            if span.dim() == n {
                return gens;
            }
            let mut next = None;
            for j in 0..n {
                let mut v = vec![Scalar::zero(); n];
                v[j] = Scalar::one();
                if !span.contains(&v) {
                    next = Some(v);
                    break;
                }
            }
            gens.push(next.expect("closure not full yet must miss a basis vector"));
        }
    }

    fn unital_closure(&self, gens: &[Vec<Scalar>]) -> EchelonSpan {
        let mut span = EchelonSpan::new(self.dim);
        span.insert(self.unit.clone());
        for g in gens {
            span.insert(g.clone());
        }
        loop {
            let basis = span.basis_matrix();
            let mut grew = false;
            for r in 0..basis.rows() {
                let row = basis.row_vec(r);
                for g in gens {
                    grew |= span.insert(self.multiply(&row, g));
                    grew |= span.insert(self.multiply(g, &row));
                }
            }
            if !grew {
                return span;
            }
        }
    }

    /// Returns the attached certificate, or computes one from scratch for
    /// a semisimple algebra that splits over the rationals. The search is
    /// deterministic given `seed`; the retry budget is 32 per split.
    pub fn wedderburn(&self, seed: u64) -> Result<WedderburnCertificate> {
        if let Some(cert) = &self.certificate {
            return Ok(cert.clone());
        }
        let (ss, _) = self.is_semisimple();
        if !ss {
            return Err(Error::NotSemisimple(self.label.clone()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let idempotents = self.central_primitive_idempotents(&mut rng)?;
        let mut blocks = Vec::new();
        for idem in idempotents {
            let (incl, action) = self.right_ideal(&idem);
            let simple = self.simple_submodule(incl, action, &mut rng)?;
            let dim = simple.dim;
            blocks.push(CertBlock { idempotent: idem, dim, simple });
        }
        let total: usize = blocks.iter().map(|b| b.dim * b.dim).sum();
        if total != self.dim {
            return Err(Error::NotSplit(
                self.label.clone(),
                format!("block dimensions square-sum to {total}, expected {}", self.dim),
            ));
        }
        Ok(WedderburnCertificate { blocks })
    }

    fn central_primitive_idempotents(&self, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<Scalar>>> {
        let center = self.center_basis();
        let mut done: Vec<Vec<Scalar>> = Vec::new();
        let mut queue = vec![self.unit.clone()];
        while let Some(e) = queue.pop() {
            // Center of the corner eA: e · Z(A).
            let mut corner = EchelonSpan::new(self.dim);
            for r in 0..center.rows() {
                corner.insert(self.multiply(&e, &center.row_vec(r)));
            }
            if corner.dim() <= 1 {
                done.push(e);
                continue;
            }
            let basis = corner.basis_matrix();
            let mut split = None;
            for _ in 0..RETRY_BUDGET {
                let z = random_combination(&basis, rng);
                let p = self.minimal_polynomial(&z, &e);
                let Some(roots) = poly::rational_roots(&p) else {
                    continue;
                };
                if roots.len() != poly::degree(&p) || roots.len() < 2 {
                    // Not fully split or not separating: try a new element.
                    continue;
                }
                let mut parts = Vec::new();
                for root in &roots {
                    let mut numer = vec![Scalar::one()];
                    let mut denom = Scalar::one();
                    for other in &roots {
                        if other != root {
                            numer = poly::mul(&numer, &poly::linear(other));
                            denom = denom * (root - other);
                        }
                    }
                    let f = self.eval_poly(&poly::scale(&numer, &denom.recip()), &z, &e);
                    parts.push(f);
                }
                let sum = parts.iter().fold(vec![Scalar::zero(); self.dim], |acc, f| {
                    acc.iter().zip(f).map(|(a, b)| a + b).collect()
                });
                assert_eq!(sum, e, "spectral idempotents must sum to the corner unit");
                for f in &parts {
                    assert_eq!(self.multiply(f, f), *f, "spectral projector not idempotent");
                }
                split = Some(parts);
                break;
            }
            match split {
                Some(parts) => queue.extend(parts),
                None => {
                    return Err(Error::NotSplit(
                        self.label.clone(),
                        "no separating central element with fully rational spectrum found"
                            .to_string(),
                    ))
                }
            }
        }
        done.sort_by(|a, b| cmp_vec(a, b));
        Ok(done)
    }

    /// Minimal polynomial of `z` inside the corner algebra with unit `e`.
    fn minimal_polynomial(&self, z: &[Scalar], e: &[Scalar]) -> Poly {
        let mut powers: Vec<Vec<Scalar>> = vec![e.to_vec()];
        let mut span = EchelonSpan::new(self.dim);
        span.insert(e.to_vec());
        loop {
            let next = self.multiply(powers.last().unwrap(), z);
            if !span.insert(next.clone()) {
                let k = powers.len();
                let stack = Mat::from_rows(powers).transpose();
                let coeffs = stack
                    .solve(&Mat::col_matrix(next))
                    .expect("power dependence must be solvable");
                let mut p = vec![Scalar::zero(); k + 1];
                for i in 0..k {
                    p[i] = -coeffs.at(i, 0).clone();
                }
                p[k] = Scalar::one();
                return p;
            }
            powers.push(next);
        }
    }

    /// Evaluates a polynomial at `z` inside the corner with unit `e`.
    fn eval_poly(&self, p: &Poly, z: &[Scalar], e: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(); self.dim];
        for c in p.iter().rev() {
            acc = self.multiply(&acc, z);
            if !c.is_zero() {
                for (a, u) in acc.iter_mut().zip(e) {
                    *a = &*a + &(c * u);
                }
            }
        }
        acc
    }

    /// The right ideal `eA` as an inclusion basis plus its right-action
    /// tensor over the full algebra basis.
    fn right_ideal(&self, e: &[Scalar]) -> (Mat, Vec<Mat>) {
        let mut span = EchelonSpan::new(self.dim);
        let mut basis = vec![Scalar::zero(); self.dim];
        for j in 0..self.dim {
            basis[j] = Scalar::one();
            span.insert(self.multiply(e, &basis));
            basis[j] = Scalar::zero();
        }
        let incl = span.basis_matrix();
        let action = self.restricted_right_action(&span);
        (incl, action)
    }

    fn restricted_right_action(&self, span: &EchelonSpan) -> Vec<Mat> {
        let incl = span.basis_matrix();
        let d = incl.rows();
        (0..self.dim)
            .map(|k| {
                let r = self.right_mult_mat(k);
                Mat::from_fn(d, d, |i, j| {
                    let moved = r.mul_vec(&incl.row_vec(j));
                    let coords = span.coords(&moved).expect("right ideal is stable");
                    coords[i].clone()
                })
            })
            .collect()
    }

    /// Splits a right module (given by inclusion rows into `A` and its
    /// action) down to one simple submodule, by repeatedly extracting an
    /// idempotent of the endomorphism algebra.
    fn simple_submodule(
        &self,
        incl: Mat,
        action: Vec<Mat>,
        rng: &mut ChaCha8Rng,
    ) -> Result<SimpleModule> {
        let d = incl.rows();
        let (end_basis, _) = crate::bimodule::right_module_homs(&action, &action);
        if end_basis.rows() == 1 {
            return Ok(SimpleModule { dim: d, action });
        }
        for _ in 0..RETRY_BUDGET {
            let u_flat = random_combination(&end_basis, rng);
            let u = Mat::unflatten(d, d, &u_flat);
            let p = matrix_minimal_polynomial(&u);
            let Some(roots) = poly::rational_roots(&p) else { continue };
            let mut projector = None;
            for root in &roots {
                let a = poly::root_multiplicity(&p, root);
                let mut lin_pow = vec![Scalar::one()];
                for _ in 0..a {
                    lin_pow = poly::mul(&lin_pow, &poly::linear(root));
                }
                let (q, rem) = poly::divrem(&p, &lin_pow);
                assert!(poly::is_zero(&rem));
                if poly::degree(&q) == 0 {
                    continue; // single generalized eigenvalue: no split
                }
                // h ≡ 1 mod (x-λ)^a, h ≡ 0 mod q gives an idempotent h(u).
                let (g, _, t) = poly::xgcd(&lin_pow, &q);
                assert_eq!(poly::degree(&g), 0);
                let h = poly::mul(&t, &q);
                let f = eval_poly_at_matrix(&h, &u);
                if !f.is_zero() && !f.mul(&f).sub(&f).is_zero() {
                    continue;
                }
                if f.is_zero() || f.is_identity() {
                    continue;
                }
                projector = Some(f);
                break;
            }
            let Some(f) = projector else { continue };
            // The image of f is a proper nonzero submodule.
            let mut sub = EchelonSpan::new(d);
            for j in 0..d {
                sub.insert(f.col_vec(j));
            }
            let sub_incl_local = sub.basis_matrix();
            let sub_action: Vec<Mat> = action
                .iter()
                .map(|act| {
                    Mat::from_fn(sub.dim(), sub.dim(), |i, j| {
                        let moved = act.mul_vec(&sub_incl_local.row_vec(j));
                        sub.coords(&moved).expect("image of idempotent is a submodule")[i].clone()
                    })
                })
                .collect();
            let sub_incl = sub_incl_local.mul(&incl);
            return self.simple_submodule(sub_incl, sub_action, rng);
        }
        Err(Error::NotSplit(
            self.label.clone(),
            "endomorphism algebra yielded no rational idempotent".to_string(),
        ))
    }

    /// Exact certificate validation: idempotent laws, centrality, the
    /// dimension count and simplicity of each attached module.
    pub fn validate_certificate(&self, cert: &WedderburnCertificate) -> Result<()> {
        let fail = |msg: String| Err(Error::Invalid(format!("certificate of {}: {msg}", self.label)));
        let mut sum = vec![Scalar::zero(); self.dim];
        for (bi, blk) in cert.blocks.iter().enumerate() {
            for (bj, other) in cert.blocks.iter().enumerate() {
                let prod = self.multiply(&blk.idempotent, &other.idempotent);
                let expect = if bi == bj { blk.idempotent.clone() } else { vec![Scalar::zero(); self.dim] };
                if prod != expect {
                    return fail(format!("blocks {bi},{bj} violate orthogonal idempotency"));
                }
            }
            if self.left_mult_of(&blk.idempotent) != self.right_mult_of(&blk.idempotent) {
                return fail(format!("block {bi} idempotent is not central"));
            }
            sum = sum.iter().zip(&blk.idempotent).map(|(a, b)| a + b).collect();
            if blk.simple.dim != blk.dim || blk.simple.action.len() != self.dim {
                return fail(format!("block {bi} simple has wrong shape"));
            }
            let id = blk
                .simple
                .action
                .iter()
                .zip(&self.unit)
                .fold(Mat::zeros(blk.dim, blk.dim), |acc, (m, u)| {
                    if u.is_zero() {
                        acc
                    } else {
                        acc.add(&m.scale(u))
                    }
                });
            if !id.is_identity() {
                return fail(format!("block {bi} unit does not act as identity"));
            }
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let mut lhs = Mat::zeros(blk.dim, blk.dim);
                    for k in 0..self.dim {
                        let c = self.c(i, j, k);
                        if !c.is_zero() {
                            lhs = lhs.add(&blk.simple.action[k].scale(c));
                        }
                    }
                    let rhs = blk.simple.action[j].mul(&blk.simple.action[i]);
                    if lhs != rhs {
                        return fail(format!("block {bi} action violates module law at ({i},{j})"));
                    }
                }
            }
            let (end, _) = crate::bimodule::right_module_homs(&blk.simple.action, &blk.simple.action);
            if end.rows() != 1 {
                return fail(format!("block {bi} module is not simple (End dim {})", end.rows()));
            }
        }
        if sum != self.unit {
            return fail("idempotents do not sum to the unit".to_string());
        }
        let total: usize = cert.blocks.iter().map(|b| b.dim * b.dim).sum();
        if total != self.dim {
            return fail(format!("dimension count Σd² = {total} ≠ {}", self.dim));
        }
        Ok(())
    }
}

const RETRY_BUDGET: usize = 32;

fn cmp_vec(a: &[Scalar], b: &[Scalar]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

fn random_combination(basis: &Mat, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); basis.cols()];
    for r in 0..basis.rows() {
        let c = rat(rng.gen_range(-4i64..=4));
        if !c.is_zero() {
            for (x, y) in v.iter_mut().zip(basis.row_vec(r)) {
                *x = &*x + &(&c * &y);
            }
        }
    }
    v
}

fn matrix_minimal_polynomial(u: &Mat) -> Poly {
    let d = u.rows();
    let mut powers: Vec<Vec<Scalar>> = vec![Mat::identity(d).flatten()];
    let mut span = EchelonSpan::new(d * d);
    span.insert(powers[0].clone());
    let mut current = Mat::identity(d);
    loop {
        current = current.mul(u);
        let flat = current.flatten();
        if !span.insert(flat.clone()) {
            let k = powers.len();
            let stack = Mat::from_rows(powers).transpose();
            let coeffs = stack.solve(&Mat::col_matrix(flat)).expect("dependence solvable");
            let mut p = vec![Scalar::zero(); k + 1];
            for i in 0..k {
                p[i] = -coeffs.at(i, 0).clone();
            }
            p[k] = Scalar::one();
            return p;
        }
        powers.push(flat);
    }
}

fn eval_poly_at_matrix(p: &Poly, u: &Mat) -> Mat {
    let d = u.rows();
    let mut acc = Mat::zeros(d, d);
    for c in p.iter().rev() {
        acc = acc.mul(u);
        if !c.is_zero() {
            acc = acc.add(&Mat::identity(d).scale(c));
        }
    }
    acc
}

/// Dual of a simple right module: `hom_A(S, A)` with the right action of
/// the opposite algebra `(f ·° a)(s) = a · f(s)`. Pure linear algebra on
/// action tensors; used to transport certificates to opposites.
fn dual_simple(alg: &Algebra, simple: &SimpleModule) -> SimpleModule {
    let regular: Vec<Mat> = (0..alg.dim).map(|k| alg.right_mult_mat(k)).collect();
    let (basis, _) = crate::bimodule::right_module_homs(&simple.action, &regular);
    let h = basis.rows();
    let mut span = EchelonSpan::new(basis.cols());
    for r in 0..h {
        span.insert(basis.row_vec(r));
    }
    let action: Vec<Mat> = (0..alg.dim)
        .map(|k| {
            let lk = alg.left_mult_mat(k);
            Mat::from_fn(h, h, |i, j| {
                let f = Mat::unflatten(alg.dim, simple.dim, &basis.row_vec(j));
                let moved = lk.mul(&f).flatten();
                span.coords(&moved).expect("left multiplication preserves hom space")[i].clone()
            })
        })
        .collect();
    SimpleModule { dim: h, action }
}

// ---------------------------------------------------------------------------
// JSON schema: {label, dim, unit, mult (triple-indexed "p/q" strings),
// certificate?}. Round trips are bit-exact.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SimpleModuleJson {
    dim: usize,
    action: Vec<Mat>,
}

#[derive(Serialize, Deserialize)]
struct CertBlockJson {
    idempotent: Vec<String>,
    dim: usize,
    simple: SimpleModuleJson,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    label: String,
    dim: usize,
    unit: Vec<String>,
    mult: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Vec<CertBlockJson>>,
}

impl Serialize for Algebra {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim;
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| scalar_to_string(self.c(i, j, k))).collect())
                    .collect()
            })
            .collect();
        let certificate = self.certificate.as_ref().map(|cert| {
            cert.blocks
                .iter()
                .map(|b| CertBlockJson {
                    idempotent: b.idempotent.iter().map(scalar_to_string).collect(),
                    dim: b.dim,
                    simple: SimpleModuleJson {
                        dim: b.simple.dim,
                        action: b.simple.action.clone(),
                    },
                })
                .collect()
        });
        AlgebraJson {
            label: self.label.clone(),
            dim: n,
            unit: self.unit.iter().map(scalar_to_string).collect(),
            mult,
            certificate,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Algebra {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = AlgebraJson::deserialize(de)?;
        let n = raw.dim;
        let parse_vec = |v: &[String]| -> std::result::Result<Vec<Scalar>, D::Error> {
            v.iter().map(|s| scalar_from_str(s).map_err(D::Error::custom)).collect()
        };
        let unit = parse_vec(&raw.unit)?;
        let mut mult = vec![Scalar::zero(); n * n * n];
        if raw.mult.len() != n {
            return Err(D::Error::custom("mult tensor has wrong outer dimension"));
        }
        for (i, plane) in raw.mult.iter().enumerate() {
            if plane.len() != n {
                return Err(D::Error::custom("mult tensor has wrong middle dimension"));
            }
            for (j, row) in plane.iter().enumerate() {
                let parsed = parse_vec(row)?;
                if parsed.len() != n {
                    return Err(D::Error::custom("mult tensor has wrong inner dimension"));
                }
                for (k, v) in parsed.into_iter().enumerate() {
                    mult[(i * n + j) * n + k] = v;
                }
            }
        }
        let certificate = match raw.certificate {
            None => None,
            Some(blocks) => Some(WedderburnCertificate {
                blocks: blocks
                    .into_iter()
                    .map(|b| {
                        Ok(CertBlock {
                            idempotent: parse_vec(&b.idempotent)?,
                            dim: b.dim,
                            simple: SimpleModule { dim: b.simple.dim, action: b.simple.action },
                        })
                    })
                    .collect::<std::result::Result<Vec<_>, D::Error>>()?,
            }),
        };
        let alg = Algebra { dim: n, mult, unit, certificate, label: raw.label };
        let report = alg.validate();
        if !report.is_ok() {
            return Err(D::Error::custom(format!(
                "algebra `{}` violates axioms on load",
                alg.label
            )));
        }
        if let Some(cert) = alg.certificate.clone() {
            alg.validate_certificate(&cert).map_err(D::Error::custom)?;
        }
        Ok(alg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_algebra_validates() {
        let a = Algebra::matrix_algebra(2);
        assert!(a.validate().is_ok());
        assert_eq!(a.dim, 4);
        let cert = a.certificate.as_ref().unwrap();
        assert_eq!(cert.block_dims(), vec![2]);
        a.validate_certificate(cert).unwrap();
    }

    #[test]
    fn perturbed_constants_reported() {
        let mut a = Algebra::matrix_algebra(2);
        let v = a.c(0, 0, 0) + Scalar::one();
        a.set_c(0, 0, 0, v);
        let report = a.validate();
        assert!(!report.is_ok());
        assert!(!report.associativity_defects.is_empty() || !report.unit_defects.is_empty());
    }

    #[test]
    fn one_dimensional_ok() {
        let q = Algebra::rational();
        assert!(q.validate().is_ok());
        assert_eq!(q.dim, 1);
        q.validate_certificate(q.certificate.as_ref().unwrap()).unwrap();
    }

    #[test]
    fn product_certificate() {
        let p = Algebra::product(&Algebra::matrix_algebra(2), &Algebra::matrix_algebra(1));
        assert_eq!(p.dim, 5);
        assert!(p.validate().is_ok());
        let cert = p.certificate.as_ref().unwrap();
        assert_eq!(cert.block_dims(), vec![2, 1]);
        p.validate_certificate(cert).unwrap();
    }

    #[test]
    fn group_algebra_idempotents() {
        let g = Algebra::group_algebra_elementary_2(1);
        assert_eq!(g.dim, 2);
        assert!(g.validate().is_ok());
        let cert = g.certificate.as_ref().unwrap();
        assert_eq!(cert.block_dims(), vec![1, 1]);
        // (1 ± g)/2
        assert_eq!(cert.blocks[0].idempotent, vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(cert.blocks[1].idempotent, vec![ratio(1, 2), ratio(-1, 2)]);
        g.validate_certificate(cert).unwrap();
    }

    #[test]
    fn opposite_involution_on_constants() {
        let a = Algebra::product(&Algebra::matrix_algebra(2), &Algebra::group_algebra_elementary_2(1));
        let oo = a.opposite().opposite();
        assert!(a.same_as(&oo));
        assert!(a.opposite().validate().is_ok());
        // commutative algebras are fixed
        let g = Algebra::group_algebra_elementary_2(2);
        assert!(g.same_as(&g.opposite()));
        // c°[i][j][k] = c[j][i][k]
        let m = Algebra::matrix_algebra(2);
        let op = m.opposite();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    assert_eq!(op.c(i, j, k), m.c(j, i, k));
                }
            }
        }
        op.validate_certificate(op.certificate.as_ref().unwrap()).unwrap();
    }

    #[test]
    fn semisimplicity_trace_form() {
        assert!(Algebra::matrix_algebra(2).is_semisimple().0);
        assert!(Algebra::matrix_algebra(3).is_semisimple().0);
        let (ss, radical) = Algebra::dual_numbers().is_semisimple();
        assert!(!ss);
        assert_eq!(radical.dim(), 1);
        assert!(radical.contains(&[rat(0), rat(1)]));
        let p = Algebra::product(&Algebra::matrix_algebra(2), &Algebra::group_algebra_elementary_2(1));
        assert!(p.is_semisimple().0);
        assert_eq!(p.is_semisimple().0, p.opposite().is_semisimple().0);
    }

    #[test]
    fn tensor_of_matrix_algebras() {
        let t = Algebra::tensor(&Algebra::matrix_algebra(2), &Algebra::matrix_algebra(3));
        assert_eq!(t.dim, 36);
        assert!(t.validate().is_ok());
        let cert = t.certificate.as_ref().unwrap();
        assert_eq!(cert.block_dims(), vec![6]);
        t.validate_certificate(cert).unwrap();
        // tensoring with the unit algebra changes nothing structurally
        let a = Algebra::matrix_algebra(2);
        let t1 = Algebra::tensor(&a, &Algebra::rational());
        assert_eq!(t1.dim, a.dim);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    assert_eq!(t1.c(i, j, k), a.c(i, j, k));
                }
            }
        }
    }

    #[test]
    fn wedderburn_recovers_stripped_product() {
        let mut p = Algebra::product(&Algebra::matrix_algebra(2), &Algebra::matrix_algebra(1));
        p.certificate = None;
        let cert = p.wedderburn(7).unwrap();
        p.validate_certificate(&cert).unwrap();
        let mut dims = cert.block_dims();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        let mut idems: Vec<Vec<Scalar>> = cert.blocks.iter().map(|b| b.idempotent.clone()).collect();
        idems.sort_by(|a, b| cmp_vec(a, b));
        assert_eq!(idems[0], vec![rat(0), rat(0), rat(0), rat(0), rat(1)]);
        assert_eq!(idems[1], vec![rat(1), rat(0), rat(0), rat(1), rat(0)]);
    }

    #[test]
    fn wedderburn_group_algebra() {
        let mut g = Algebra::group_algebra_elementary_2(1);
        g.certificate = None;
        let cert = g.wedderburn(7).unwrap();
        g.validate_certificate(&cert).unwrap();
        let mut idems: Vec<Vec<Scalar>> = cert.blocks.iter().map(|b| b.idempotent.clone()).collect();
        idems.sort_by(|a, b| cmp_vec(a, b));
        assert_eq!(idems[0], vec![ratio(1, 2), ratio(-1, 2)]);
        assert_eq!(idems[1], vec![ratio(1, 2), ratio(1, 2)]);
    }

    #[test]
    fn wedderburn_rejects_non_semisimple() {
        assert!(matches!(
            Algebra::dual_numbers().wedderburn(7),
            Err(Error::NotSemisimple(_))
        ));
    }

    #[test]
    fn wedderburn_deterministic() {
        let mut m = Algebra::matrix_algebra(2);
        m.certificate = None;
        let c1 = m.wedderburn(11).unwrap();
        let c2 = m.wedderburn(11).unwrap();
        assert_eq!(c1, c2);
        m.validate_certificate(&c1).unwrap();
        assert_eq!(c1.block_dims(), vec![2]);
    }

    #[test]
    fn generating_sets_are_small_and_generate() {
        let a = Algebra::tensor(
            &Algebra::matrix_algebra(2),
            &Algebra::product(&Algebra::matrix_algebra(1), &Algebra::matrix_algebra(1)),
        );
        let gens = a.generating_set();
        assert!(gens.len() <= a.dim);
        let span = a.unital_closure(&gens);
        assert_eq!(span.dim(), a.dim);
    }

    #[test]
    fn wedderburn_rejects_unsplit_field() {
        // Q[x]/(x^2 - 2): a field, semisimple, but not split over Q.
        let mut mult = vec![Scalar::zero(); 8];
        let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
        mult[idx(0, 0, 0)] = rat(1);
        mult[idx(0, 1, 1)] = rat(1);
        mult[idx(1, 0, 1)] = rat(1);
        mult[idx(1, 1, 0)] = rat(2);
        let f = Algebra::from_structure_constants("Q(sqrt2)", 2, mult, vec![rat(1), rat(0)])
            .unwrap();
        assert!(f.is_semisimple().0);
        assert!(matches!(f.wedderburn(7), Err(Error::NotSplit(_, _))));
    }

    #[test]
    fn wedderburn_rejects_division_algebra() {
        // Rational quaternions: split center, no rational idempotents.
        let mut mult = vec![Scalar::zero(); 64];
        let idx = |i: usize, j: usize, k: usize| (i * 4 + j) * 4 + k;
        let table: [[(usize, i64); 4]; 4] = [
            [(0, 1), (1, 1), (2, 1), (3, 1)],
            [(1, 1), (0, -1), (3, 1), (2, -1)],
            [(2, 1), (3, -1), (0, -1), (1, 1)],
            [(3, 1), (2, 1), (1, -1), (0, -1)],
        ];
        for i in 0..4 {
            for j in 0..4 {
                let (k, sign) = table[i][j];
                mult[idx(i, j, k)] = rat(sign);
            }
        }
        let h = Algebra::from_structure_constants(
            "H(Q)",
            4,
            mult,
            vec![rat(1), rat(0), rat(0), rat(0)],
        )
        .unwrap();
        assert!(h.is_semisimple().0);
        assert!(matches!(h.wedderburn(7), Err(Error::NotSplit(_, _))));
    }

    #[test]
    fn json_round_trip() {
        let a = Algebra::product(&Algebra::matrix_algebra(2), &Algebra::group_algebra_elementary_2(1));
        let json = serde_json::to_string(&a).unwrap();
        let back: Algebra = serde_json::from_str(&json).unwrap();
        assert!(a.same_as(&back));
        assert_eq!(a.label, back.label);
        assert_eq!(a.certificate, back.certificate);
        let json2 = serde_json::to_string(&back).unwrap();
        assert_eq!(json, json2);
    }
}
