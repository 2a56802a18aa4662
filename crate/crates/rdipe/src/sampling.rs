//! Stochastic primitives: exact Bell-basis sampling for every state backend,
//! single-copy Pauli shot simulation, and Bell-based purity estimation.
//!
//! All samplers are driven by caller-provided RNGs; combined with the
//! substreams in [`crate::rng`] this keeps parallel experiments reproducible.
//! Shot noise is simulated from the exact expectation value (a Binomial draw
//! is the sum of the individual ±1 outcomes), which is distributionally
//! identical to simulating each measurement and much faster.

use std::collections::HashMap;

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::clifford::RealCliffordTableau;
use crate::pauli::{Letter, PauliString};
use crate::states::dense::{wht_inplace, C64};
use crate::states::{CwState, QuantumState, StateError, SupportFamily};

/// Largest mixed-state size for which the 4^n Bell table is tabulated.
pub const MAX_MIXED_BELL_QUBITS: usize = 8;

// ---------------------------------------------------------------------------
// Closed-form Pauli-distribution categories for W and Dicke supports.

/// Which labels a category covers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum CategoryKind {
    /// Z/I-only strings with exactly `s` Z letters.
    ZOnly { s: usize },
    /// One XX or YY pair, `s_rest` Z letters among the other n−2 sites.
    Pair { s_rest: usize },
    /// Four X/Y letters, all X or all Y; free I/Z on the rest.
    QuadPure,
    /// Four X/Y letters, two of each; free I/Z on the rest.
    QuadMixed,
}

/// One value class of the exact Pauli distribution of `|W⟩`/`|Dicke_k⟩`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Category {
    pub kind: CategoryKind,
    /// Number of labels in the class (exact).
    pub count: u128,
    /// Common expectation value ⟨P⟩ of every label in the class.
    pub value: f64,
    /// Total probability mass `count·value²/2^n`.
    pub mass: f64,
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Exact value classes of the Pauli distribution of the Dicke(n,k) state,
/// k ∈ {1, 2}. Masses sum to 1 (`Σ_a ⟨P_a⟩² = 2^n` for these pure states).
pub(crate) fn w_dicke_categories(n: usize, k: usize) -> Vec<Category> {
    assert!(n >= 2, "closed-form categories need n ≥ 2");
    assert!(k == 1 || k == 2, "closed form implemented for k ∈ {{1, 2}}");
    let nf = n as f64;
    let two_n = (n as f64).exp2();
    let mut cats = Vec::new();
    let push = |cats: &mut Vec<Category>, kind, count: u128, value: f64| {
        let mass = count as f64 * value * value / two_n;
        cats.push(Category { kind, count, value, mass });
    };
    for s in 0..=n {
        let value = match k {
            1 => (nf - 2.0 * s as f64) / nf,
            _ => {
                let t = nf - 2.0 * s as f64;
                (t * t - nf) / (nf * (nf - 1.0))
            }
        };
        push(&mut cats, CategoryKind::ZOnly { s }, binomial_u128(n, s), value);
    }
    let pairs = 2 * binomial_u128(n, 2);
    for s_rest in 0..=(n - 2) {
        let value = match k {
            1 => 2.0 / nf,
            _ => 4.0 * (nf - 2.0 - 2.0 * s_rest as f64) / (nf * (nf - 1.0)),
        };
        push(&mut cats, CategoryKind::Pair { s_rest }, pairs * binomial_u128(n - 2, s_rest), value);
    }
    if k == 2 && n >= 4 {
        let patterns = 1u128 << (n - 4);
        let quad_sites = binomial_u128(n, 4);
        push(&mut cats, CategoryKind::QuadPure, 2 * quad_sites * patterns, 12.0 / (nf * (nf - 1.0)));
        push(&mut cats, CategoryKind::QuadMixed, 6 * quad_sites * patterns, 4.0 / (nf * (nf - 1.0)));
    }
    debug_assert!((cats.iter().map(|c| c.mass).sum::<f64>() - 1.0).abs() < 1e-9);
    cats
}

/// Sample `k` distinct sites of `0..n` uniformly (partial Fisher-Yates).
fn sample_sites(n: usize, k: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        idx.swap(i, j);
    }
    idx.truncate(k);
    idx
}

fn sample_category<'a>(cats: &'a [Category], rng: &mut impl Rng) -> &'a Category {
    let total: f64 = cats.iter().map(|c| c.mass).sum();
    let mut r = rng.gen::<f64>() * total;
    for c in cats {
        r -= c.mass;
        if r <= 0.0 {
            return c;
        }
    }
    cats.last().expect("categories nonempty")
}

fn realize_category(n: usize, cat: &Category, rng: &mut impl Rng) -> PauliString {
    let mut p = PauliString::identity(n);
    match cat.kind {
        CategoryKind::ZOnly { s } => {
            for site in sample_sites(n, s, rng) {
                p.set_letter(site, Letter::Z);
            }
        }
        CategoryKind::Pair { s_rest } => {
            let pair = sample_sites(n, 2, rng);
            let letter = if rng.gen::<bool>() { Letter::X } else { Letter::Y };
            p.set_letter(pair[0], letter);
            p.set_letter(pair[1], letter);
            let rest: Vec<usize> = (0..n).filter(|s| !pair.contains(s)).collect();
            let mut rest_sites = rest;
            for i in 0..s_rest {
                let j = rng.gen_range(i..rest_sites.len());
                rest_sites.swap(i, j);
            }
            for &site in rest_sites.iter().take(s_rest) {
                p.set_letter(site, Letter::Z);
            }
        }
        CategoryKind::QuadPure | CategoryKind::QuadMixed => {
            let quad = sample_sites(n, 4, rng);
            let letters: Vec<Letter> = if cat.kind == CategoryKind::QuadPure {
                let l = if rng.gen::<bool>() { Letter::X } else { Letter::Y };
                vec![l; 4]
            } else {
                // Choose which two of the four sites carry Y.
                let mut ls = vec![Letter::X; 4];
                let pick = sample_sites(4, 2, rng);
                ls[pick[0]] = Letter::Y;
                ls[pick[1]] = Letter::Y;
                ls
            };
            for (site, l) in quad.iter().zip(letters) {
                p.set_letter(*site, l);
            }
            for site in 0..n {
                if !quad.contains(&site) && rng.gen::<bool>() {
                    p.set_letter(site, Letter::Z);
                }
            }
        }
    }
    p
}

/// Public view of the value classes: (label count, common ⟨P⟩) pairs.
pub fn w_dicke_value_classes(n: usize, k: usize) -> Vec<(u128, f64)> {
    w_dicke_categories(n, k).iter().map(|c| (c.count, c.value)).collect()
}

/// Exact sample from the Pauli distribution of the n-qubit W state.
///
/// With probability 1/n the label is Z/I-only with Z-count drawn
/// ∝ C(n,z)(1−2z/n)²; otherwise it carries one XX or YY pair (uniform over
/// the 2·C(n,2) placements) and independent uniform I/Z elsewhere.
pub fn w_pauli_sample(n: usize, rng: &mut impl Rng) -> PauliString {
    dicke_pauli_sample(n, 1, rng)
}

/// Exact sample from the Pauli distribution of the Dicke(n,k) state, k ≤ 2.
pub fn dicke_pauli_sample(n: usize, k: usize, rng: &mut impl Rng) -> PauliString {
    let cats = w_dicke_categories(n, k);
    let cat = sample_category(&cats, rng);
    realize_category(n, cat, rng)
}

// ---------------------------------------------------------------------------
// Bell-basis sampling.

/// Exact sampler for the Bell distribution `q_ρ(a) = ⟨Φ_a|ρ⊗ρ|Φ_a⟩`.
///
/// Construction picks the cheapest exact route per backend:
/// - W/Dicke supports: closed-form category sampling plus one tableau
///   conjugation per draw (no dense conversion at any n).
/// - custom supports: two-stage sparse sampler, O(n·|support|) per draw.
/// - dense pure states: per-draw Walsh–Hadamard inversion, O(2^n·n).
/// - dense mixed states: tabulated 4^n Bell distribution (n ≤ 8).
pub struct BellSampler {
    kind: SamplerKind,
}

enum SamplerKind {
    CwClosed { n: usize, k: usize, tableau: RealCliffordTableau },
    CwGeneric(SupportSampler),
    DensePure { n: usize, amps: Vec<C64>, cumulative: Vec<f64> },
    DenseMixed { n: usize, cumulative: Vec<f64> },
}

impl BellSampler {
    pub fn new(state: &QuantumState) -> Result<Self, StateError> {
        let kind = match state {
            QuantumState::Cw(s) => match s.family() {
                SupportFamily::W => {
                    SamplerKind::CwClosed { n: s.num_qubits(), k: 1, tableau: s.tableau().clone() }
                }
                SupportFamily::Dicke(k) if k <= 2 => {
                    SamplerKind::CwClosed { n: s.num_qubits(), k, tableau: s.tableau().clone() }
                }
                _ => SamplerKind::CwGeneric(SupportSampler::new(s)),
            },
            QuantumState::Dense(d) => {
                if let Some(v) = d.vector() {
                    let n = d.num_qubits();
                    if n <= MAX_MIXED_BELL_QUBITS {
                        // Small states: tabulating the 4^n Bell distribution
                        // beats the per-draw transform.
                        let q = crate::distributions::bell_distribution(state)?;
                        let mut cumulative = Vec::with_capacity(q.len());
                        let mut acc = 0.0;
                        for p in &q {
                            acc += p.max(0.0);
                            cumulative.push(acc);
                        }
                        return Ok(BellSampler { kind: SamplerKind::DenseMixed { n, cumulative } });
                    }
                    let amps: Vec<C64> = v.iter().cloned().collect();
                    let mut cumulative = Vec::with_capacity(amps.len());
                    let mut acc = 0.0;
                    for a in &amps {
                        acc += a.norm_sqr();
                        cumulative.push(acc);
                    }
                    SamplerKind::DensePure { n: d.num_qubits(), amps, cumulative }
                } else {
                    let n = d.num_qubits();
                    if n > MAX_MIXED_BELL_QUBITS {
                        return Err(StateError::TooLargeForDense(n, MAX_MIXED_BELL_QUBITS));
                    }
                    let q = crate::distributions::bell_distribution(state)?;
                    let mut cumulative = Vec::with_capacity(q.len());
                    let mut acc = 0.0;
                    for p in &q {
                        acc += p.max(0.0);
                        cumulative.push(acc);
                    }
                    SamplerKind::DenseMixed { n, cumulative }
                }
            }
        };
        Ok(BellSampler { kind })
    }

    /// Force the per-draw transform route for a pure dense state (the
    /// default construction tabulates small states instead).
    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn new_pure_transform(d: &crate::states::DenseState) -> Result<Self, StateError> {
        let v = d.vector().ok_or(StateError::NotReal)?;
        let amps: Vec<C64> = v.iter().cloned().collect();
        let mut cumulative = Vec::with_capacity(amps.len());
        let mut acc = 0.0;
        for a in &amps {
            acc += a.norm_sqr();
            cumulative.push(acc);
        }
        Ok(BellSampler { kind: SamplerKind::DensePure { n: d.num_qubits(), amps, cumulative } })
    }

    /// Draw one Bell outcome label (sign-free).
    pub fn sample(&self, rng: &mut impl Rng) -> PauliString {
        match &self.kind {
            SamplerKind::CwClosed { n, k, tableau } => {
                let b = dicke_pauli_sample(*n, *k, rng);
                tableau.conjugate(&b).expect("real tableau").without_sign()
            }
            SamplerKind::CwGeneric(s) => s.sample(rng),
            SamplerKind::DensePure { n, amps, cumulative } => {
                sample_dense_pure(*n, amps, cumulative, rng)
            }
            SamplerKind::DenseMixed { n, cumulative } => {
                let idx = draw_cumulative(cumulative, rng);
                PauliString::from_label_index(*n, idx)
            }
        }
    }
}

/// One-shot convenience wrapper around [`BellSampler`].
///
/// The draw is exactly distributed as `q_ρ`; for real pure states this
/// coincides with the Pauli distribution `p_ρ`. Panics if the state is
/// outside the sampling caps (mixed dense states need n ≤ 8).
pub fn bell_sample(state: &QuantumState, rng: &mut impl Rng) -> PauliString {
    BellSampler::new(state).expect("state within Bell-sampling caps").sample(rng)
}

fn draw_cumulative(cumulative: &[f64], rng: &mut impl Rng) -> usize {
    let total = *cumulative.last().expect("nonempty");
    let r = rng.gen::<f64>() * total;
    cumulative.partition_point(|&c| c <= r).min(cumulative.len() - 1)
}

/// Bell measurement on ψ⊗ψ: measure the XOR register, then the sign register
/// conditioned on it. The conditional over z is |WHT_z(ψ_j ψ_{j⊕x})|².
fn sample_dense_pure(n: usize, amps: &[C64], cumulative: &[f64], rng: &mut impl Rng) -> PauliString {
    let u = draw_cumulative(cumulative, rng);
    let v = draw_cumulative(cumulative, rng);
    let x = u ^ v;
    let d = 1usize << n;
    let mut buf: Vec<C64> = (0..d).map(|j| amps[j] * amps[j ^ x]).collect();
    wht_inplace(&mut buf);
    let mut cum = Vec::with_capacity(d);
    let mut acc = 0.0;
    for b in &buf {
        acc += b.norm_sqr();
        cum.push(acc);
    }
    let z = draw_cumulative(&cum, rng);
    PauliString::from_xz_u128(n, x as u128, z as u128)
}

/// Two-stage exact sampler for arbitrary sparse supports.
///
/// Stage 1 draws the X pattern as the XOR of two independent support draws.
/// Stage 2 samples the Z pattern bit by bit; conditional weights group the
/// admissible support pairs by their undecided suffix, O(n·|support|) with
/// hashing per draw.
struct SupportSampler {
    n: usize,
    support: Vec<(u128, f64)>,
    index: HashMap<u128, usize>,
    cumulative: Vec<f64>,
    tableau: RealCliffordTableau,
}

impl SupportSampler {
    fn new(state: &CwState) -> Self {
        let support = state.support().to_vec();
        let index = support.iter().enumerate().map(|(i, &(b, _))| (b, i)).collect();
        let mut cumulative = Vec::with_capacity(support.len());
        let mut acc = 0.0;
        for &(_, c) in &support {
            acc += c * c;
            cumulative.push(acc);
        }
        SupportSampler {
            n: state.num_qubits(),
            support,
            index,
            cumulative,
            tableau: state.tableau().clone(),
        }
    }

    fn sample(&self, rng: &mut impl Rng) -> PauliString {
        let u = self.support[draw_cumulative(&self.cumulative, rng)].0;
        let v = self.support[draw_cumulative(&self.cumulative, rng)].0;
        let x = u ^ v;
        // Admissible kets and their pair weights h_z = c_z c_{z⊕x}.
        let mut kets: Vec<u128> = Vec::new();
        let mut h: Vec<f64> = Vec::new();
        for &(z, c) in &self.support {
            if let Some(&j) = self.index.get(&(z ^ x)) {
                kets.push(z);
                h.push(c * self.support[j].1);
            }
        }
        let mut zbits: u128 = 0;
        let mut groups: HashMap<u128, (f64, f64)> = HashMap::new();
        for bit in 0..self.n {
            groups.clear();
            for (zu, tu) in kets.iter().zip(&h) {
                let key = zu >> (bit + 1);
                let e = groups.entry(key).or_insert((0.0, 0.0));
                e.0 += tu;
                if (zu >> bit) & 1 == 1 {
                    e.1 -= tu;
                } else {
                    e.1 += tu;
                }
            }
            let (mut w0, mut w1) = (0.0, 0.0);
            for (a, b) in groups.values() {
                w0 += a * a;
                w1 += b * b;
            }
            if rng.gen::<f64>() * (w0 + w1) < w1 {
                zbits |= 1 << bit;
                for (zu, tu) in kets.iter().zip(h.iter_mut()) {
                    if (zu >> bit) & 1 == 1 {
                        *tu = -*tu;
                    }
                }
            }
        }
        let b = PauliString::from_xz_u128(self.n, x, zbits);
        self.tableau.conjugate(&b).expect("real tableau").without_sign()
    }
}

// ---------------------------------------------------------------------------
// Shot-noise simulation.

/// Empirical mean of `shots` single-copy ±1 measurements of P, with
/// `P(+1) = (1 + ⟨P⟩)/2`. Unbiased estimator of `⟨P⟩`.
pub fn pauli_shots(
    state: &QuantumState,
    p: &PauliString,
    shots: u64,
    rng: &mut impl Rng,
) -> Result<f64, StateError> {
    assert!(shots >= 1, "pauli_shots requires at least one shot");
    let e = state.expectation(p)?;
    let prob = ((1.0 + e) / 2.0).clamp(0.0, 1.0);
    let ones = Binomial::new(shots, prob).expect("probability in [0,1]").sample(rng);
    Ok(2.0 * ones as f64 / shots as f64 - 1.0)
}

/// Mean SWAP eigenvalue `(−1)^{y_a}` over `shots` Bell samples: an unbiased
/// estimator of `tr ρ²`.
pub fn estimate_purity(state: &QuantumState, shots: u64, rng: &mut impl Rng) -> f64 {
    assert!(shots >= 1);
    let sampler = BellSampler::new(state).expect("state within Bell-sampling caps");
    let mut acc: i64 = 0;
    for _ in 0..shots {
        acc += sampler.sample(rng).swap_symmetry_sign() as i64;
    }
    acc as f64 / shots as f64
}
