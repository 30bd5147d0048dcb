//! Field and atomic operators on the truncated product space.

use num_complex::Complex64 as C64;

use crate::basis::BasisIndex;
use crate::params::Atom;
use crate::sparse::CsrMatrix;

/// Matrices of the elementary operators, all on the flat basis.
///
/// The Fock space is hard-truncated: `a† |n_max> = 0`, so `[a, a†] = 1`
/// everywhere except on the top Fock level, where it equals `-n_max`.
#[derive(Clone, Debug)]
pub struct OperatorSet {
    basis: BasisIndex,
    pub identity: CsrMatrix,
    pub a: CsrMatrix,
    pub a_dag: CsrMatrix,
    pub n: CsrMatrix,
    pub a2: CsrMatrix,
    pub a_dag2: CsrMatrix,
    /// `X+ = (a + a†) / sqrt(2)`.
    pub x_plus: CsrMatrix,
    /// `X- = (a - a†) / (sqrt(2) i)`.
    pub x_minus: CsrMatrix,
    sigma_z: [CsrMatrix; 2],
    sigma_plus: [CsrMatrix; 2],
    sigma_minus: [CsrMatrix; 2],
}

fn real(v: f64) -> C64 {
    C64::new(v, 0.0)
}

impl OperatorSet {
    pub fn new(basis: BasisIndex) -> Self {
        let nf = basis.fock_dim();
        let id2 = CsrMatrix::identity(2);
        let idf = CsrMatrix::identity(nf);

        // single-mode ladder operator, a|m> = sqrt(m)|m-1>
        let a_f =
            CsrMatrix::from_triplets(nf, (1..nf).map(|m| (m - 1, m, real((m as f64).sqrt()))));
        // atomic operators with g = 0, e = 1
        let sm = CsrMatrix::from_triplets(2, [(0, 1, real(1.0))]);
        let sp = sm.adjoint();
        let sz = CsrMatrix::from_diagonal([real(-1.0), real(1.0)]);

        let field = |op: &CsrMatrix| id2.kron(&id2).kron(op);
        let atom1 = |op: &CsrMatrix| op.kron(&id2).kron(&idf);
        let atom2 = |op: &CsrMatrix| id2.kron(op).kron(&idf);

        let a = field(&a_f);
        let a_dag = a.adjoint();
        let n = field(&CsrMatrix::from_diagonal((0..nf).map(|m| real(m as f64))));
        let a2 = a.matmul(&a);
        let a_dag2 = a_dag.matmul(&a_dag);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let x_plus = a.add(&a_dag).scale(real(h));
        let x_minus = a.sub(&a_dag).scale(C64::new(0.0, -h));

        Self {
            basis,
            identity: CsrMatrix::identity(basis.dim()),
            a,
            a_dag,
            n,
            a2,
            a_dag2,
            x_plus,
            x_minus,
            sigma_z: [atom1(&sz), atom2(&sz)],
            sigma_plus: [atom1(&sp), atom2(&sp)],
            sigma_minus: [atom1(&sm), atom2(&sm)],
        }
    }

    pub fn basis(&self) -> BasisIndex {
        self.basis
    }

    fn slot(atom: Atom) -> usize {
        match atom {
            Atom::One => 0,
            Atom::Two => 1,
        }
    }

    pub fn sigma_z(&self, atom: Atom) -> &CsrMatrix {
        &self.sigma_z[Self::slot(atom)]
    }

    pub fn sigma_plus(&self, atom: Atom) -> &CsrMatrix {
        &self.sigma_plus[Self::slot(atom)]
    }

    pub fn sigma_minus(&self, atom: Atom) -> &CsrMatrix {
        &self.sigma_minus[Self::slot(atom)]
    }

    /// Jaynes–Cummings exchange `a σ_j^+ + a† σ_j^-`.
    pub fn exchange(&self, atom: Atom) -> CsrMatrix {
        self.a
            .matmul(self.sigma_plus(atom))
            .add(&self.a_dag.matmul(self.sigma_minus(atom)))
    }
}
