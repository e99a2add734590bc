//! Hermitian, trace-free generator bases for su(2), su(3) and su(4), and the
//! Dirac operators built from Pauli products.
//!
//! Generators are kept unnormalized (`Tr(g_k g_l) = c_k δ_kl` with `c_k = 2`
//! for Pauli and Gell-Mann matrices, `c_k = 4` for Pauli products), so
//! projection divides by the stored norm constants.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{anticommutator, commutator, kron, pauli, Operator, I, ONE, ZERO};

/// Special unitary group whose Lie algebra a basis spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    Su2,
    Su3,
    Su4,
}

impl Group {
    pub fn dim(self) -> usize {
        match self {
            Group::Su2 => 2,
            Group::Su3 => 3,
            Group::Su4 => 4,
        }
    }

    pub fn algebra_dim(self) -> usize {
        let n = self.dim();
        n * n - 1
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Group::Su2 => "su2",
            Group::Su3 => "su3",
            Group::Su4 => "su4",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "su2" => Ok(Group::Su2),
            "su3" => Ok(Group::Su3),
            "su4" => Ok(Group::Su4),
            other => Err(Error::UnknownGroup(other.to_string())),
        }
    }
}

const PAULI_CHARS: [char; 4] = ['I', 'X', 'Y', 'Z'];

/// Label of `σ_i ⊗ σ_j` in the su(4) basis, e.g. `(2, 1)` is `"YX"`.
pub fn su4_label(i: usize, j: usize) -> String {
    format!("{}{}", PAULI_CHARS[i], PAULI_CHARS[j])
}

/// Inverse of [`su4_label`].
pub fn parse_su4_label(label: &str) -> Option<(usize, usize)> {
    let chars: Vec<char> = label.chars().collect();
    let [x, y] = chars[..] else {
        return None;
    };
    let a = PAULI_CHARS.iter().position(|&c| c == x)?;
    let b = PAULI_CHARS.iter().position(|&c| c == y)?;
    if (a, b) == (0, 0) {
        return None;
    }
    Some((a, b))
}

/// Ordered, labeled generator set spanning su(N).
#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    group: Group,
    labels: Vec<String>,
    elements: Vec<Operator>,
    norm_constants: Vec<f64>,
}

/// Builds the labeled basis for `group`.
///
/// * su2: `sx, sy, sz`
/// * su3: Gell-Mann matrices `l1 .. l8`
/// * su4: every `σ_i ⊗ σ_j` except the identity, lexicographic in `(i, j)`
pub fn build_basis(group: Group) -> GeneratorBasis {
    let (labels, elements): (Vec<String>, Vec<Operator>) = match group {
        Group::Su2 => ["sx", "sy", "sz"]
            .iter()
            .enumerate()
            .map(|(k, l)| (l.to_string(), pauli(k + 1)))
            .unzip(),
        Group::Su3 => gell_mann()
            .into_iter()
            .enumerate()
            .map(|(k, g)| (format!("l{}", k + 1), g))
            .unzip(),
        Group::Su4 => (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&ij| ij != (0, 0))
            .map(|(i, j)| (su4_label(i, j), kron(&pauli(i), &pauli(j))))
            .unzip(),
    };
    let norm_constants = elements.iter().map(|g| (g * g).trace().re).collect();
    GeneratorBasis {
        group,
        labels,
        elements,
        norm_constants,
    }
}

fn gell_mann() -> Vec<Operator> {
    let r3 = 1.0 / 3f64.sqrt();
    let sparse = |entries: &[(usize, usize, Complex64)]| {
        let mut m = Operator::zeros(3);
        for &(i, j, v) in entries {
            m[(i, j)] = v;
        }
        m
    };
    vec![
        sparse(&[(0, 1, ONE), (1, 0, ONE)]),
        sparse(&[(0, 1, -I), (1, 0, I)]),
        sparse(&[(0, 0, ONE), (1, 1, -ONE)]),
        sparse(&[(0, 2, ONE), (2, 0, ONE)]),
        sparse(&[(0, 2, -I), (2, 0, I)]),
        sparse(&[(1, 2, ONE), (2, 1, ONE)]),
        sparse(&[(1, 2, -I), (2, 1, I)]),
        Operator::diag(&[ONE * r3, ONE * r3, ONE * (-2.0 * r3)]),
    ]
}

impl GeneratorBasis {
    pub fn group(&self) -> Group {
        self.group
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> &[Operator] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &Operator {
        &self.elements[k]
    }

    /// `norm_constants()[k] = Tr(g_k^2)`.
    pub fn norm_constants(&self) -> &[f64] {
        &self.norm_constants
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel {
                group: self.group.to_string(),
                label: label.to_string(),
            })
    }

    /// `c_k = Tr(g_k A) / Tr(g_k^2)`.
    ///
    /// Any identity component of `A` is dropped (and logged), since it has no
    /// image in the trace-free algebra.
    pub fn project_coefficients(&self, a: &Operator) -> Result<Vec<f64>> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: a.dim(),
                right: self.dim(),
            });
        }
        let dev = a.hermitian_deviation();
        if dev > crate::matrix::HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = a.trace();
        if tr.norm() > 1e-12 {
            log::warn!(
                "projecting a matrix with trace {:.3e}; identity component dropped",
                tr.re
            );
        }
        Ok(self.project_unchecked(a))
    }

    /// Projection without validation; used on hot paths where the input is
    /// Hermitian by construction.
    pub(crate) fn project_unchecked(&self, a: &Operator) -> Vec<f64> {
        self.elements
            .iter()
            .zip(&self.norm_constants)
            .map(|(g, &c)| hermitian_trace_product(g, a) / c)
            .collect()
    }

    /// `Σ c_k g_k`.
    pub fn reconstruct(&self, coeffs: &[f64]) -> Result<Operator> {
        if coeffs.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(self.reconstruct_unchecked(coeffs))
    }

    pub(crate) fn reconstruct_unchecked(&self, coeffs: &[f64]) -> Operator {
        let mut out = Operator::zeros(self.dim());
        for (g, &c) in self.elements.iter().zip(coeffs) {
            if c != 0.0 {
                out.axpy(c, g);
            }
        }
        out
    }

    /// Real structure constants `f[k][l][m]` with `-i [g_k, g_l] = Σ_m f[k][l][m] g_m`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<f64>>> {
        let n = self.len();
        let mut f = vec![vec![vec![0.0; n]; n]; n];
        for k in 0..n {
            for l in 0..n {
                let c = commutator(&self.elements[k], &self.elements[l])
                    .expect("basis elements share a dimension")
                    .scale(-I);
                f[k][l] = self.project_unchecked(&c);
            }
        }
        f
    }
}

/// `Re Tr(G A)` for Hermitian `G`, without forming the product.
fn hermitian_trace_product(g: &Operator, a: &Operator) -> f64 {
    let n = g.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            let gij = g[(i, j)];
            if gij != ZERO {
                acc += (gij * a[(j, i)]).re;
            }
        }
    }
    acc
}

/// Dirac matrices `α = (α_x, α_y, α_z)` and `β`.
#[derive(Debug, Clone)]
pub struct DiracOperators {
    pub alpha: [Operator; 3],
    pub beta: Operator,
}

/// Canonical Dirac operators: `β = σz ⊗ 1`, `α_j = σy ⊗ σ_j`.
///
/// With this choice `m β + p·α` is the block matrix
/// `[[m 1, -i p·σ], [i p·σ, -m 1]]`.
pub fn dirac_operators() -> DiracOperators {
    DiracOperators::with_alpha_factor(&pauli(2))
}

impl DiracOperators {
    /// `α_j = outer ⊗ σ_j`, `β = σz ⊗ 1`.
    pub fn with_alpha_factor(outer: &Operator) -> Self {
        DiracOperators {
            alpha: [1, 2, 3].map(|j| kron(outer, &pauli(j))),
            beta: kron(&pauli(3), &pauli(0)),
        }
    }

    /// `m β + Σ p_j α_j`.
    pub fn hamiltonian(&self, m: f64, p: [f64; 3]) -> Operator {
        let mut h = self.beta.scale_re(m);
        for (a, &pj) in self.alpha.iter().zip(&p) {
            h.axpy(pj, a);
        }
        h
    }
}

/// Deviation of one algebra relation.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub name: String,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraReport {
    pub relations: Vec<Relation>,
}

impl AlgebraReport {
    pub fn max_deviation(&self) -> f64 {
        self.relations.iter().map(|r| r.deviation).fold(0.0, f64::max)
    }
}

/// Evaluates the sixteen defining relations: `β² = 1`, `α_j² = 1`,
/// `{α_j, α_k} = 2δ_jk 1` for all ordered pairs, and `{β, α_k} = 0`.
pub fn verify_algebra(ops: &DiracOperators) -> AlgebraReport {
    let id = Operator::identity(4);
    let axes = ["x", "y", "z"];
    let mut relations = Vec::with_capacity(16);
    let mut push = |name: String, lhs: Operator, rhs: &Operator| {
        relations.push(Relation {
            name,
            deviation: lhs.max_abs_diff(rhs),
        });
    };
    push("beta^2=1".into(), &ops.beta * &ops.beta, &id);
    for (j, a) in ops.alpha.iter().enumerate() {
        push(format!("alpha_{}^2=1", axes[j]), a * a, &id);
    }
    for j in 0..3 {
        for k in 0..3 {
            let want = if j == k { id.scale_re(2.0) } else { Operator::zeros(4) };
            let ac = anticommutator(&ops.alpha[j], &ops.alpha[k]).expect("4x4 operands");
            push(format!("{{alpha_{},alpha_{}}}", axes[j], axes[k]), ac, &want);
        }
    }
    for (k, a) in ops.alpha.iter().enumerate() {
        let ac = anticommutator(&ops.beta, a).expect("4x4 operands");
        push(format!("{{beta,alpha_{}}}=0", axes[k]), ac, &Operator::zeros(4));
    }
    AlgebraReport { relations }
}

/// Unitary `B = diag(1, i) ⊗ 1` carrying the `α_j = σx ⊗ σ_j` representation
/// onto the canonical `α_j = σy ⊗ σ_j` one: `B (σx ⊗ σ_j) B^H = σy ⊗ σ_j`
/// and `B (σy ⊗ σ_j) B^H = -σx ⊗ σ_j`.
pub fn convention_bridge() -> Operator {
    Operator::diag(&[ONE, ONE, I, I])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn basis_sizes_and_norms() {
        let su2 = build_basis(Group::Su2);
        assert_eq!(su2.len(), 3);
        assert!(su2.norm_constants().iter().all(|&c| c == 2.0));
        let su4 = build_basis(Group::Su4);
        assert_eq!(su4.len(), 15);
        assert!(su4.norm_constants().iter().all(|&c| c == 4.0));
        let su3 = build_basis(Group::Su3);
        assert_eq!(su3.len(), 8);
        assert!(su3.norm_constants().iter().all(|&c| (c - 2.0).abs() < 1e-15));
    }

    #[test]
    fn bases_are_trace_orthogonal_hermitian_traceless() {
        for group in [Group::Su2, Group::Su3, Group::Su4] {
            let b = build_basis(group);
            for k in 0..b.len() {
                let g = b.element(k);
                assert!(g.hermitian_deviation() < 1e-14);
                assert!(g.trace().norm() < 1e-14);
                for l in 0..b.len() {
                    let t = (g * b.element(l)).trace();
                    let want = if k == l { b.norm_constants()[k] } else { 0.0 };
                    assert!((t - want).norm() < 1e-14, "{group} {k} {l}");
                }
            }
        }
    }

    #[test]
    fn su4_labels_are_lexicographic() {
        let b = build_basis(Group::Su4);
        assert_eq!(b.labels()[0], "IX");
        assert_eq!(b.labels()[3], "XI");
        assert_eq!(b.labels()[14], "ZZ");
        assert_eq!(parse_su4_label("YX"), Some((2, 1)));
        assert_eq!(parse_su4_label("II"), None);
        assert_eq!(parse_su4_label("YXZ"), None);
    }

    #[test]
    fn unit_vector_reconstructs_generator() {
        let b = build_basis(Group::Su4);
        let k = b.index_of("YX").unwrap();
        let mut c = vec![0.0; 15];
        c[k] = 1.0;
        assert_eq!(b.reconstruct(&c).unwrap(), kron(&pauli(2), &pauli(1)));
        assert_eq!(b.reconstruct(&[0.0; 15]).unwrap(), Operator::zeros(4));
        assert!(matches!(
            b.reconstruct(&[0.0; 3]),
            Err(Error::LengthMismatch { expected: 15, got: 3 })
        ));
    }

    #[test]
    fn project_simple_su2() {
        let b = build_basis(Group::Su2);
        let a = &pauli(1).scale_re(2.0) + &pauli(3).scale_re(3.0);
        assert_eq!(b.project_coefficients(&a).unwrap(), vec![2.0, 0.0, 3.0]);
        assert!(b.project_coefficients(&Operator::identity(3)).is_err());
    }

    #[test]
    fn project_drops_identity_component() {
        let b = build_basis(Group::Su2);
        let a = &pauli(1) + &Operator::identity(2);
        assert_eq!(b.project_coefficients(&a).unwrap(), vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn dirac_mass_coefficient_is_beta_label() {
        let b = build_basis(Group::Su4);
        let h = dirac_operators().hamiltonian(1.5, [0.2, -0.7, 1.1]);
        let c = b.project_coefficients(&h).unwrap();
        assert_eq!(c[b.index_of("ZI").unwrap()], 1.5);
        assert_eq!(c[b.index_of("YX").unwrap()], 0.2);
        assert_eq!(c[b.index_of("YY").unwrap()], -0.7);
        assert_eq!(c[b.index_of("YZ").unwrap()], 1.1);
    }

    #[test]
    fn dirac_beta_and_example_hamiltonian() {
        let ops = dirac_operators();
        assert_eq!(ops.beta, Operator::diag(&[ONE, ONE, -ONE, -ONE]));
        let h = ops.hamiltonian(1.0, [0.0, 0.0, 1.0]);
        let want = Operator::from_rows([
            [ONE, ZERO, -I, ZERO],
            [ZERO, ONE, ZERO, I],
            [I, ZERO, -ONE, ZERO],
            [ZERO, -I, ZERO, -ONE],
        ]);
        assert_eq!(h, want);
        assert_eq!(&h * &h, Operator::identity(4).scale_re(2.0));
    }

    #[test]
    fn canonical_algebra_is_exact() {
        let r = verify_algebra(&dirac_operators());
        assert_eq!(r.relations.len(), 16);
        assert_eq!(r.max_deviation(), 0.0);
    }

    #[test]
    fn perturbed_alpha_is_detected() {
        let mut ops = dirac_operators();
        ops.alpha[0][(0, 3)] += Complex64::new(1e-6, 0.0);
        assert!(verify_algebra(&ops).max_deviation() > 0.0);
    }

    #[test]
    fn sigma_x_variant_satisfies_algebra_but_not_displayed_form() {
        let alt = DiracOperators::with_alpha_factor(&pauli(1));
        assert_eq!(verify_algebra(&alt).max_deviation(), 0.0);
        let canonical = dirac_operators().hamiltonian(1.0, [0.3, 0.0, 1.0]);
        assert!(alt.hamiltonian(1.0, [0.3, 0.0, 1.0]).max_abs_diff(&canonical) > 0.5);
    }

    #[test]
    fn bridge_maps_sigma_x_products_onto_canonical_alpha() {
        let b = convention_bridge();
        for j in 0..4 {
            let x = kron(&pauli(1), &pauli(j));
            let y = kron(&pauli(2), &pauli(j));
            assert_eq!(&(&b * &x) * &b.adjoint(), y);
            assert_eq!(&(&b * &y) * &b.adjoint(), -&x);
        }
    }

    #[test]
    fn structure_constants_match_pauli_algebra() {
        // -i[σx, σy] = 2 σz
        let f = build_basis(Group::Su2).structure_constants();
        assert_eq!(f[0][1], vec![0.0, 0.0, 2.0]);
        assert_eq!(f[1][0], vec![0.0, 0.0, -2.0]);
        let f3 = build_basis(Group::Su3).structure_constants();
        for k in 0..8 {
            for l in 0..8 {
                for m in 0..8 {
                    assert!((f3[k][l][m] + f3[l][k][m]).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn roundtrip_random_traceless_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for group in [Group::Su2, Group::Su3, Group::Su4] {
            let b = build_basis(group);
            for _ in 0..25 {
                let c: Vec<f64> = (0..b.len()).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let a = b.reconstruct(&c).unwrap();
                assert!(a.hermitian_deviation() < 1e-15 && a.trace().norm() < 1e-13);
                let back = b.project_coefficients(&a).unwrap();
                for (x, y) in c.iter().zip(&back) {
                    assert!((x - y).abs() < 1e-13);
                }
                assert!(b.reconstruct(&back).unwrap().max_abs_diff(&a) < 1e-13);
            }
        }
    }

    #[test]
    fn constraint_coefficients_reproduce_displayed_block_matrix() {
        // Ω_ij on σ_i ⊗ σ_j for the eleven labels used by the printed constraint
        let b = build_basis(Group::Su4);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let labels = [
            (0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3),
        ];
        for _ in 0..20 {
            let mut om = [[0.0f64; 4]; 4];
            let mut c = vec![0.0; 15];
            for &(i, j) in &labels {
                om[i][j] = rng.gen_range(-2.0..2.0);
                c[b.index_of(&su4_label(i, j)).unwrap()] = om[i][j];
            }
            let f = b.reconstruct(&c).unwrap();
            let z = |re: f64, im: f64| Complex64::new(re, im);
            let o = |i: usize, j: usize| om[i][j];
            let plus = o(0, 3) + o(3, 3);
            let minus = o(0, 3) - o(3, 3);
            let xi01 = z(o(3, 1) + o(0, 1), -o(3, 2) - o(0, 2));
            let xi23 = z(-o(3, 1) + o(0, 1), o(3, 2) - o(0, 2));
            let xi13 = z(o(1, 0), -o(2, 0) + o(2, 3));
            let xi02 = z(o(1, 0), -o(2, 0) - o(2, 3));
            let xi03 = z(-o(2, 2), -o(2, 1));
            let xi12 = z(o(2, 2), -o(2, 1));
            let want = Operator::from_rows([
                [z(plus, 0.0), xi01, xi02, xi03],
                [xi01.conj(), z(-plus, 0.0), xi12, xi13],
                [xi02.conj(), xi12.conj(), z(minus, 0.0), xi23],
                [xi03.conj(), xi13.conj(), xi23.conj(), z(-minus, 0.0)],
            ]);
            assert!(f.max_abs_diff(&want) < 1e-15);
            // orthogonal to the σx-form Dirac Hamiltonian the table was written against
            let h = DiracOperators::with_alpha_factor(&pauli(1)).hamiltonian(0.7, [0.1, -1.3, 0.4]);
            assert!((&h * &f).trace().norm() < 1e-14);
        }
    }

    #[test]
    fn group_parsing() {
        assert_eq!("SU4".parse::<Group>().unwrap(), Group::Su4);
        assert!(matches!("su5".parse::<Group>(), Err(Error::UnknownGroup(_))));
    }
}
