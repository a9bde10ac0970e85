//! Test-corpus construction: named algebras plus seeded random bimodules.
//!
//! Random bimodules are not rejection-sampled from raw action tensors;
//! they are direct sums of simple `(A, B)`-blocks with random
//! multiplicities, conjugated by a random unimodular base change. That
//! guarantees the action axioms by construction and covers every
//! multiplicity pattern up to the dimension bound.

use crate::algebra::Algebra;
use crate::bimodule::{intertwiner_space, Bimodule};
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::report::Mutation;
use crate::scalar::{rat, Scalar};
use num::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Declarative algebra constructors for corpus files.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraSpec {
    Rational,
    Matrix { d: usize },
    Product { factors: Vec<AlgebraSpec> },
    GroupZ2k { k: u32 },
    DualNumbers,
    Raw { algebra: Algebra },
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<Algebra> {
        Ok(match self {
            AlgebraSpec::Rational => Algebra::rational(),
            AlgebraSpec::Matrix { d } => {
                if *d == 0 {
                    return Err(Error::Invalid("matrix algebra needs d >= 1".to_string()));
                }
                Algebra::matrix_algebra(*d)
            }
            AlgebraSpec::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::Invalid("empty product".to_string()));
                }
                let mut built = factors.iter().map(|f| f.build()).collect::<Result<Vec<_>>>()?;
                let mut acc = built.remove(0);
                for b in built {
                    acc = Algebra::product(&acc, &b);
                }
                acc
            }
            AlgebraSpec::GroupZ2k { k } => Algebra::group_algebra_elementary_2(*k),
            AlgebraSpec::DualNumbers => Algebra::dual_numbers(),
            AlgebraSpec::Raw { algebra } => {
                let report = algebra.validate();
                if !report.is_ok() {
                    return Err(Error::Invalid(format!(
                        "raw algebra `{}` fails validation",
                        algebra.label
                    )));
                }
                algebra.clone()
            }
        })
    }
}

/// Generation policy for the random-bimodule part of a corpus.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BimodulePolicy {
    pub count: usize,
    pub max_dim: usize,
    pub seed: u64,
}

/// A corpus description: which algebras to build and how many random
/// bimodules to generate between them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub algebras: Vec<AlgebraSpec>,
    pub bimodules: BimodulePolicy,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mutation: Option<Mutation>,
}

impl Default for CorpusSpec {
    /// The default corpus: Q, Q×Q, M₂(Q), M₂(Q)×Q, Q[C2], the dual
    /// numbers as the non-semisimple entry, and 30 random bimodules at
    /// seed 7.
    fn default() -> Self {
        CorpusSpec {
            algebras: vec![
                AlgebraSpec::Rational,
                AlgebraSpec::Product {
                    factors: vec![AlgebraSpec::Rational, AlgebraSpec::Rational],
                },
                AlgebraSpec::Matrix { d: 2 },
                AlgebraSpec::Product {
                    factors: vec![AlgebraSpec::Matrix { d: 2 }, AlgebraSpec::Matrix { d: 1 }],
                },
                AlgebraSpec::GroupZ2k { k: 1 },
                AlgebraSpec::DualNumbers,
            ],
            bimodules: BimodulePolicy { count: 30, max_dim: 8, seed: 7 },
            mutation: None,
        }
    }
}

/// A built corpus: algebras (semisimple ones carry certificates) and
/// random bimodules between the certified ones.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub algebras: Vec<Arc<Algebra>>,
    pub bimodules: Vec<Bimodule>,
    pub seed: u64,
    pub mutation: Option<Mutation>,
}

impl Corpus {
    pub fn from_spec(spec: &CorpusSpec) -> Result<Corpus> {
        let mut algebras = Vec::new();
        for aspec in &spec.algebras {
            let mut alg = aspec.build()?;
            // Raw entries carry no certificate; recover one when the
            // algebra splits so they join the certified pool.
            if alg.certificate.is_none() {
                if let Ok(cert) = alg.wedderburn(spec.bimodules.seed) {
                    alg.validate_certificate(&cert)?;
                    alg.certificate = Some(cert);
                }
            }
            algebras.push(Arc::new(alg));
        }
        let mut labels = std::collections::HashSet::new();
        for a in &algebras {
            if !labels.insert(a.label.clone()) {
                return Err(Error::Invalid(format!("duplicate algebra label `{}`", a.label)));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(spec.bimodules.seed);
        let certified: Vec<Arc<Algebra>> =
            algebras.iter().filter(|a| a.certificate.is_some()).cloned().collect();
        let mut bimodules = Vec::new();
        if !certified.is_empty() {
            for k in 0..spec.bimodules.count {
                let a = certified[rng.gen_range(0..certified.len())].clone();
                let b = certified[rng.gen_range(0..certified.len())].clone();
                let label = format!("rand{k}({}->{})", a.label, b.label);
                bimodules.push(random_bimodule(&a, &b, spec.bimodules.max_dim, &label, &mut rng));
            }
        }
        Ok(Corpus {
            algebras,
            bimodules,
            seed: spec.bimodules.seed,
            mutation: spec.mutation.clone(),
        })
    }

    pub fn default_corpus() -> Corpus {
        Corpus::from_spec(&CorpusSpec::default()).expect("default corpus builds")
    }

    pub fn semisimple(&self) -> Vec<Arc<Algebra>> {
        self.algebras.iter().filter(|a| a.certificate.is_some()).cloned().collect()
    }

    pub fn algebra_by_label(&self, label: &str) -> Option<Arc<Algebra>> {
        self.algebras.iter().find(|a| a.label == label).cloned()
    }

    /// SHA-256 digest of the canonical JSON serialisation.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(self).expect("corpus serialises");
        let mut hasher = Sha256::new();
        hasher.update(&json);
        let hex: String = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
        format!("sha256:{hex}")
    }
}

/// Random `(A, B)`-bimodule: a direct sum of simple blocks `S_i^* ⊠ T_j`
/// with random multiplicities within the dimension bound, conjugated by
/// a random unimodular base change. Both algebras must carry
/// certificates; the result always satisfies the bimodule axioms.
pub fn random_bimodule(
    a: &Arc<Algebra>,
    b: &Arc<Algebra>,
    max_dim: usize,
    label: &str,
    rng: &mut ChaCha8Rng,
) -> Bimodule {
    let ca = a.certificate.as_ref().expect("left algebra must be certified");
    let cb = b.certificate.as_ref().expect("right algebra must be certified");
    let mut pairs: Vec<(usize, usize)> = (0..ca.blocks.len())
        .flat_map(|i| (0..cb.blocks.len()).map(move |j| (i, j)))
        .collect();
    pairs.shuffle(rng);
    let mut budget = max_dim;
    let mut left_act: Vec<Mat> = (0..a.dim).map(|_| Mat::zeros(0, 0)).collect();
    let mut right_act: Vec<Mat> = (0..b.dim).map(|_| Mat::zeros(0, 0)).collect();
    let mut total = 0usize;
    for (i, j) in pairs {
        let di = ca.blocks[i].dim;
        let ej = cb.blocks[j].dim;
        let block = di * ej;
        if block == 0 || block > budget {
            continue;
        }
        let max_mult = (budget / block).min(2);
        let mult = rng.gen_range(0..=max_mult);
        for _ in 0..mult {
            budget -= block;
            total += block;
            for (k, act) in left_act.iter_mut().enumerate() {
                // Left action on the dual of S_i is the transposed action.
                let piece = ca.blocks[i].simple.action[k].transpose().kron(&Mat::identity(ej));
                *act = act.direct_sum(&piece);
            }
            for (k, act) in right_act.iter_mut().enumerate() {
                let piece = Mat::identity(di).kron(&cb.blocks[j].simple.action[k]);
                *act = act.direct_sum(&piece);
            }
        }
        if budget == 0 {
            break;
        }
    }
    let u = random_unimodular(total, rng);
    let u_inv = u.inverse().expect("unimodular matrices invert");
    let conj = |m: &Mat| u.mul(m).mul(&u_inv);
    Bimodule {
        left: a.clone(),
        right: b.clone(),
        dim: total,
        left_act: left_act.iter().map(&conj).collect(),
        right_act: right_act.iter().map(&conj).collect(),
        label: label.to_string(),
    }
}

/// Product of random elementary row operations: always invertible, with
/// small integer entries.
pub fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> Mat {
    let mut u = Mat::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = rat(rng.gen_range(-2i64..=2));
        if c.is_zero() {
            continue;
        }
        // row_i += c · row_j
        let mut e = Mat::identity(n);
        e.set(i, j, c);
        u = e.mul(&u);
    }
    u
}

/// A random intertwiner `M → N` as a small random combination of the
/// echelon basis of the intertwiner space (zero when the space is zero).
pub fn random_intertwiner(
    m: &Bimodule,
    n: &Bimodule,
    rng: &mut ChaCha8Rng,
) -> crate::bimodule::Intertwiner {
    let basis = intertwiner_space(m, n);
    let mut flat = vec![Scalar::zero(); n.dim * m.dim];
    for r in 0..basis.rows() {
        let c = rat(rng.gen_range(-3i64..=3));
        if !c.is_zero() {
            for (x, b) in flat.iter_mut().zip(basis.row_vec(r)) {
                if !b.is_zero() {
                    *x = &*x + &(&c * &b);
                }
            }
        }
    }
    crate::bimodule::Intertwiner {
        source: m.clone(),
        target: n.clone(),
        mat: Mat::unflatten(n.dim, m.dim, &flat),
    }
}

// ---------------------------------------------------------------------------
// Corpus JSON: algebras embed their full schema; bimodules reference
// algebras by label and carry their action matrices.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct BimoduleJson {
    label: String,
    left: String,
    right: String,
    dim: usize,
    left_act: Vec<Mat>,
    right_act: Vec<Mat>,
}

#[derive(Serialize, Deserialize)]
struct CorpusJson {
    seed: u64,
    algebras: Vec<Algebra>,
    bimodules: Vec<BimoduleJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    mutation: Option<Mutation>,
}

impl Serialize for Corpus {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        CorpusJson {
            seed: self.seed,
            algebras: self.algebras.iter().map(|a| (**a).clone()).collect(),
            bimodules: self
                .bimodules
                .iter()
                .map(|b| BimoduleJson {
                    label: b.label.clone(),
                    left: b.left.label.clone(),
                    right: b.right.label.clone(),
                    dim: b.dim,
                    left_act: b.left_act.clone(),
                    right_act: b.right_act.clone(),
                })
                .collect(),
            mutation: self.mutation.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Corpus {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CorpusJson::deserialize(de)?;
        let algebras: Vec<Arc<Algebra>> = raw.algebras.into_iter().map(Arc::new).collect();
        let by_label: BTreeMap<String, Arc<Algebra>> =
            algebras.iter().map(|a| (a.label.clone(), a.clone())).collect();
        let mut bimodules = Vec::new();
        for bj in raw.bimodules {
            let left = by_label
                .get(&bj.left)
                .ok_or_else(|| D::Error::custom(format!("unknown algebra `{}`", bj.left)))?
                .clone();
            let right = by_label
                .get(&bj.right)
                .ok_or_else(|| D::Error::custom(format!("unknown algebra `{}`", bj.right)))?
                .clone();
            let bim = Bimodule {
                left,
                right,
                dim: bj.dim,
                left_act: bj.left_act,
                right_act: bj.right_act,
                label: bj.label,
            };
            bim.validate().map_err(D::Error::custom)?;
            bimodules.push(bim);
        }
        Ok(Corpus { algebras, bimodules, seed: raw.seed, mutation: raw.mutation })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_corpus_builds_and_validates() {
        let corpus = Corpus::default_corpus();
        assert_eq!(corpus.algebras.len(), 6);
        assert_eq!(corpus.bimodules.len(), 30);
        let labels: Vec<&str> = corpus.algebras.iter().map(|a| a.label.as_str()).collect();
        assert_eq!(labels, vec!["Q", "QxQ", "M2(Q)", "M2(Q)xM1(Q)", "Q[C2^1]", "Q[x]/(x^2)"]);
        assert_eq!(corpus.semisimple().len(), 5);
        for b in &corpus.bimodules {
            b.validate().unwrap();
            assert!(b.dim <= 8);
        }
    }

    #[test]
    fn same_seed_same_digest() {
        let c1 = Corpus::default_corpus();
        let c2 = Corpus::default_corpus();
        assert_eq!(c1.digest(), c2.digest());
        let mut spec = CorpusSpec::default();
        spec.bimodules.seed = 8;
        let c3 = Corpus::from_spec(&spec).unwrap();
        assert_ne!(c1.digest(), c3.digest());
    }

    #[test]
    fn count_zero_gives_algebras_only() {
        let mut spec = CorpusSpec::default();
        spec.bimodules.count = 0;
        let corpus = Corpus::from_spec(&spec).unwrap();
        assert!(corpus.bimodules.is_empty());
        assert_eq!(corpus.algebras.len(), 6);
    }

    #[test]
    fn corpus_json_round_trip() {
        let mut spec = CorpusSpec::default();
        spec.bimodules.count = 4;
        let corpus = Corpus::from_spec(&spec).unwrap();
        let json = serde_json::to_string(&corpus).unwrap();
        let back: Corpus = serde_json::from_str(&json).unwrap();
        assert_eq!(corpus.digest(), back.digest());
        let json2 = serde_json::to_string(&back).unwrap();
        assert_eq!(json, json2);
    }

    #[test]
    fn raw_algebras_get_certified_when_split() {
        let mut raw = Algebra::matrix_algebra(2);
        raw.certificate = None;
        raw.label = "rawM2".to_string();
        let spec = CorpusSpec {
            algebras: vec![AlgebraSpec::Raw { algebra: raw }],
            bimodules: BimodulePolicy { count: 2, max_dim: 4, seed: 5 },
            mutation: None,
        };
        let corpus = Corpus::from_spec(&spec).unwrap();
        assert!(corpus.algebras[0].certificate.is_some());
        assert_eq!(corpus.bimodules.len(), 2);
        for b in &corpus.bimodules {
            b.validate().unwrap();
        }
    }

    #[test]
    fn random_intertwiners_validate() {
        let mut spec = CorpusSpec::default();
        spec.bimodules.count = 6;
        let corpus = Corpus::from_spec(&spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in &corpus.bimodules {
            let f = random_intertwiner(m, m, &mut rng);
            f.validate().unwrap();
        }
    }
}
