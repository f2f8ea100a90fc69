//! Modules over kE, E = (Z/p)^r, as r commuting p-nilpotent matrices.
//!
//! The stored action of generator i is `x_i = g_i - 1`. Vectors are columns
//! and a module map `f: S -> T` is a `dim T x dim S` matrix.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactla::field::is_prime;
use crate::exactla::{Field, FieldDesc, FieldElem, Matrix, MatrixJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDesc {
    pub p: u32,
    pub r: u32,
}

impl GroupDesc {
    pub fn new(p: u32, r: u32) -> Result<GroupDesc> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::BadGroup("rank must be at least 1".into()));
        }
        if (p as u64).checked_pow(r).is_none_or(|o| o > 1 << 12) {
            return Err(Error::BadGroup(format!("(Z/{p})^{r} is too large")));
        }
        Ok(GroupDesc { p, r })
    }

    /// Dimension of the group algebra, p^r.
    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.r)
    }

    /// Exponent vector of the monomial with index `b` (base-p digits).
    pub fn exponents(&self, b: usize) -> Vec<u32> {
        let p = self.p as usize;
        let mut b = b;
        (0..self.r)
            .map(|_| {
                let d = (b % p) as u32;
                b /= p;
                d
            })
            .collect()
    }

    /// Index of the top monomial x_1^(p-1)...x_r^(p-1), the norm element.
    pub fn top_monomial(&self) -> usize {
        self.order() - 1
    }
}

#[derive(Clone)]
pub struct Module {
    group: GroupDesc,
    field: Field,
    dim: usize,
    actions: Vec<Matrix>,
    provenance: String,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.field == other.field && self.dim == other.dim && self.actions == other.actions
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Module(p={}, r={}, {:?}, dim={}, {})",
            self.group.p, self.group.r, self.field, self.dim, self.provenance
        )
    }
}

/// JSON shape of a module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub group: GroupDesc,
    pub field: FieldDesc,
    pub dim: usize,
    pub actions: Vec<MatrixJson>,
    pub provenance: String,
}

impl Module {
    /// Validated constructor: checks sizes, characteristic, `X_i^p = 0` and
    /// pairwise commutation.
    pub fn new(group: GroupDesc, field: &Field, dim: usize, actions: Vec<Matrix>, provenance: impl Into<String>) -> Result<Module> {
        if field.p() != group.p {
            return Err(Error::WrongCharacteristic { field: field.p(), group: group.p });
        }
        if actions.len() != group.r as usize {
            return Err(Error::Dimension(format!("{} action matrices for rank {}", actions.len(), group.r)));
        }
        for x in &actions {
            if x.rows() != dim || x.cols() != dim {
                return Err(Error::Dimension(format!("action of size {}x{} on a {dim}-dimensional module", x.rows(), x.cols())));
            }
            if x.field() != field {
                return Err(Error::FieldMismatch("action matrix over a different field".into()));
            }
        }
        for (i, x) in actions.iter().enumerate() {
            if !x.pow(group.p)?.is_zero() {
                return Err(Error::GeneratorNotNilpotent(i));
            }
        }
        for i in 0..actions.len() {
            for j in i + 1..actions.len() {
                if actions[i].dot(&actions[j]) != actions[j].dot(&actions[i]) {
                    return Err(Error::NotCommuting(i, j));
                }
            }
        }
        Ok(Module { group, field: field.clone(), dim, actions, provenance: provenance.into() })
    }

    pub fn zero(group: GroupDesc, field: &Field) -> Module {
        let actions = (0..group.r).map(|_| Matrix::zeros(field, 0, 0)).collect();
        Module { group, field: field.clone(), dim: 0, actions, provenance: "0".into() }
    }

    /// The trivial module k.
    pub fn trivial(group: GroupDesc, field: &Field) -> Module {
        Module::trivial_sum(group, field, 1)
    }

    /// k^m with zero action.
    pub fn trivial_sum(group: GroupDesc, field: &Field, m: usize) -> Module {
        let actions = (0..group.r).map(|_| Matrix::zeros(field, m, m)).collect();
        let prov = if m == 1 { "k".to_string() } else { format!("k^{m}") };
        Module { group, field: field.clone(), dim: m, actions, provenance: prov }
    }

    /// The regular module kE on the monomial basis, monomial index `sum a_i p^i`.
    pub fn regular(group: GroupDesc, field: &Field) -> Module {
        let n = group.order();
        let p = group.p as usize;
        let actions = (0..group.r as usize)
            .map(|i| {
                let step = p.pow(i as u32);
                let mut x = Matrix::zeros(field, n, n);
                for b in 0..n {
                    if (b / step) % p < p - 1 {
                        x.set(b + step, b, FieldElem::ONE);
                    }
                }
                x
            })
            .collect();
        Module { group, field: field.clone(), dim: n, actions, provenance: "kE".into() }
    }

    /// Free module of the given rank.
    pub fn free(group: GroupDesc, field: &Field, rank: usize) -> Module {
        let reg = Module::regular(group, field);
        let mut m = Module::zero(group, field);
        for _ in 0..rank {
            m = m.direct_sum(&reg).expect("same group and field");
        }
        m.provenance = if rank == 1 { "kE".into() } else { format!("kE^{rank}") };
        m
    }

    pub fn group(&self) -> GroupDesc {
        self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.actions[i]
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Module {
        self.provenance = provenance.into();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn check_compatible(&self, other: &Module) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!("{:?} vs {:?}", self.group, other.group)));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{:?} vs {:?}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Module) -> Result<Module> {
        self.check_compatible(other)?;
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Module {
            group: self.group,
            field: self.field.clone(),
            dim: self.dim + other.dim,
            actions,
            provenance: format!("({} + {})", self.provenance, other.provenance),
        })
    }

    /// `M^m`.
    pub fn power(&self, m: usize) -> Module {
        let mut out = Module::zero(self.group, &self.field);
        for _ in 0..m {
            out = out.direct_sum(self).expect("compatible");
        }
        out
    }

    /// Tensor product with the diagonal action `x -> X (x) I + I (x) Y + X (x) Y`.
    pub fn tensor(&self, other: &Module) -> Result<Module> {
        self.check_compatible(other)?;
        let f = &self.field;
        let ia = Matrix::identity(f, self.dim);
        let ib = Matrix::identity(f, other.dim);
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(x, y)| {
                let mut t = x.kron(&ib)?;
                t.add_scaled(FieldElem::ONE, &ia.kron(y)?);
                t.add_scaled(FieldElem::ONE, &x.kron(y)?);
                Ok(t)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Module {
            group: self.group,
            field: f.clone(),
            dim: self.dim * other.dim,
            actions,
            provenance: format!("({} (x) {})", self.provenance, other.provenance),
        })
    }

    /// Contragredient module: `g` acts on M* by the transpose of `g^-1`.
    pub fn dual(&self) -> Module {
        let f = &self.field;
        let p = self.group.p;
        let id = Matrix::identity(f, self.dim);
        let actions = self
            .actions
            .iter()
            .map(|x| {
                // (I + X)^-1 - I = sum_{j=1}^{p-1} (-X)^j
                let neg = x.scale(f.neg(FieldElem::ONE));
                let mut acc = Matrix::zeros(f, self.dim, self.dim);
                let mut pw = id.clone();
                for _ in 1..p {
                    pw = pw.dot(&neg);
                    acc.add_scaled(FieldElem::ONE, &pw);
                }
                acc.transpose()
            })
            .collect();
        Module {
            group: self.group,
            field: f.clone(),
            dim: self.dim,
            actions,
            provenance: format!("D({})", self.provenance),
        }
    }

    /// Module with the transposed generator matrices. Since kE is
    /// commutative this is again a module, the dual along `x_i -> x_i`.
    pub fn transpose_dual(&self) -> Module {
        Module {
            group: self.group,
            field: self.field.clone(),
            dim: self.dim,
            actions: self.actions.iter().map(|x| x.transpose()).collect(),
            provenance: format!("T({})", self.provenance),
        }
    }

    /// `M (x)_k K` for an extension field K.
    pub fn base_change(&self, target: &Field) -> Result<Module> {
        if target == &self.field {
            return Ok(self.clone());
        }
        if target.p() != self.group.p {
            return Err(Error::NotExtension(format!("{target:?}"), format!("{:?}", self.field)));
        }
        let emb = self.field.embedding(target)?;
        let actions = self.actions.iter().map(|x| x.map_entries(target, |e| emb.apply(e))).collect();
        Ok(Module {
            group: self.group,
            field: target.clone(),
            dim: self.dim,
            actions,
            provenance: format!("{}_{{GF({}^{})}}", self.provenance, target.p(), target.n()),
        })
    }

    /// Restriction of scalars to the prime field: each entry becomes its
    /// multiplication matrix on the polynomial basis.
    pub fn restrict_scalars(&self) -> Module {
        let n = self.field.n() as usize;
        if n == 1 {
            return self.clone();
        }
        let prime = Field::prime(self.field.p()).expect("prime characteristic");
        let d = self.dim;
        let actions = self
            .actions
            .iter()
            .map(|x| {
                let mut out = Matrix::zeros(&prime, d * n, d * n);
                for i in 0..d {
                    for j in 0..d {
                        let e = x.get(i, j);
                        if e.is_zero() {
                            continue;
                        }
                        let block = self.field.mult_matrix(e);
                        for (a, row) in block.iter().enumerate() {
                            for (b, &v) in row.iter().enumerate() {
                                out.set(i * n + a, j * n + b, prime.from_int(v as i64));
                            }
                        }
                    }
                }
                out
            })
            .collect();
        Module {
            group: self.group,
            field: prime,
            dim: d * n,
            actions,
            provenance: format!("res({})", self.provenance),
        }
    }

    /// Matrices of every monomial x^b, indexed as in the regular module.
    pub fn monomial_matrices(&self) -> Vec<Matrix> {
        let n = self.group.order();
        let p = self.group.p as usize;
        let mut out: Vec<Matrix> = Vec::with_capacity(n);
        out.push(Matrix::identity(&self.field, self.dim));
        for b in 1..n {
            let (i, step) = (0..self.group.r as usize)
                .map(|i| (i, p.pow(i as u32)))
                .find(|&(_, step)| (b / step) % p != 0)
                .unwrap();
            let prev = out[b - step].clone();
            out.push(self.actions[i].dot(&prev));
        }
        out
    }

    /// Action of the norm element, the top monomial.
    pub fn norm_matrix(&self) -> Matrix {
        let mut acc = Matrix::identity(&self.field, self.dim);
        for x in &self.actions {
            for _ in 1..self.group.p {
                acc = x.dot(&acc);
            }
        }
        acc
    }

    /// Rows spanning rad M = sum of the images of the x_i, in RREF.
    pub fn radical(&self) -> Matrix {
        let stacked = Matrix::hstack(&self.field, &self.actions.iter().collect::<Vec<_>>(), self.dim);
        stacked.transpose().row_space().0
    }

    /// Rows spanning soc M = intersection of the kernels of the x_i.
    pub fn socle(&self) -> Matrix {
        let stacked = Matrix::vstack(&self.field, &self.actions.iter().collect::<Vec<_>>(), self.dim);
        stacked.kernel_basis()
    }

    /// Dimension of M / rad M.
    pub fn top_dim(&self) -> usize {
        self.dim - self.radical().rows()
    }

    /// Dimensions of rad^i M for i = 0, 1, ... until zero.
    pub fn radical_series(&self) -> Vec<usize> {
        let mut dims = vec![self.dim];
        let mut cur = Matrix::identity(&self.field, self.dim);
        while cur.rows() > 0 {
            let images: Vec<Matrix> = self.actions.iter().map(|x| x.dot(&cur.transpose()).transpose()).collect();
            let stacked = Matrix::vstack(&self.field, &images.iter().collect::<Vec<_>>(), self.dim);
            cur = stacked.row_space().0;
            dims.push(cur.rows());
        }
        dims
    }

    /// Submodule spanned by the given rows (which must span an invariant
    /// subspace), with the inclusion map `dim M x dim S`.
    pub fn submodule(&self, rows: &Matrix) -> Result<(Module, Matrix)> {
        let (basis, pivots) = rows.row_space();
        let s = basis.rows();
        let f = &self.field;
        let mut actions = Vec::with_capacity(self.actions.len());
        for x in &self.actions {
            let images = x.dot(&basis.transpose()); // dim x s, columns X b_j
            let mut a = Matrix::zeros(f, s, s);
            for j in 0..s {
                let v = images.col(j);
                let coords: Vec<FieldElem> = pivots.iter().map(|&c| v[c]).collect();
                // verify invariance
                let mut check = v.clone();
                for (l, &c) in coords.iter().enumerate() {
                    f.axpy(&mut check, f.neg(c), basis.row(l));
                }
                if check.iter().any(|e| !e.is_zero()) {
                    return Err(Error::Dimension("subspace is not a submodule".into()));
                }
                for (l, &c) in coords.iter().enumerate() {
                    a.set(l, j, c);
                }
            }
            actions.push(a);
        }
        let sub = Module {
            group: self.group,
            field: f.clone(),
            dim: s,
            actions,
            provenance: format!("sub({})", self.provenance),
        };
        Ok((sub, basis.transpose()))
    }

    /// Quotient by the submodule spanned by `rows`, with the projection map
    /// `dim Q x dim M`. The quotient basis is the images of the standard
    /// vectors at non-pivot positions.
    pub fn quotient(&self, rows: &Matrix) -> Result<(Module, Matrix)> {
        let (basis, pivots) = rows.row_space();
        let f = &self.field;
        let d = self.dim;
        let mut is_pivot = vec![false; d];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..d).filter(|&c| !is_pivot[c]).collect();
        let project = |v: &[FieldElem]| -> Vec<FieldElem> {
            let mut w = v.to_vec();
            for (l, &c) in pivots.iter().enumerate() {
                let coef = w[c];
                if !coef.is_zero() {
                    f.axpy(&mut w, f.neg(coef), basis.row(l));
                }
            }
            free.iter().map(|&c| w[c]).collect()
        };
        let qd = free.len();
        let mut proj = Matrix::zeros(f, qd, d);
        for c in 0..d {
            let mut e = vec![FieldElem::ZERO; d];
            e[c] = FieldElem::ONE;
            let col = project(&e);
            for (i, &v) in col.iter().enumerate() {
                proj.set(i, c, v);
            }
        }
        // the submodule must be invariant for the quotient to be well defined
        for x in &self.actions {
            for l in 0..basis.rows() {
                let img = x.mul_vec(basis.row(l));
                if project(&img).iter().any(|e| !e.is_zero()) {
                    return Err(Error::Dimension("subspace is not a submodule".into()));
                }
            }
        }
        let actions = self
            .actions
            .iter()
            .map(|x| {
                let mut a = Matrix::zeros(f, qd, qd);
                for (j, &c) in free.iter().enumerate() {
                    let col = project(&x.col(c));
                    for (i, &v) in col.iter().enumerate() {
                        a.set(i, j, v);
                    }
                }
                a
            })
            .collect();
        let q = Module {
            group: self.group,
            field: f.clone(),
            dim: qd,
            actions,
            provenance: format!("quot({})", self.provenance),
        };
        Ok((q, proj))
    }

    /// Rows spanning the submodule generated by the given vectors (rows).
    pub fn generated_submodule(&self, gens: &Matrix) -> Matrix {
        let mons = self.monomial_matrices();
        let mut all = Vec::new();
        for m in &mons {
            all.push(m.dot(&gens.transpose()).transpose());
        }
        Matrix::vstack(&self.field, &all.iter().collect::<Vec<_>>(), self.dim).row_space().0
    }

    /// Whether `f: self -> target` commutes with the action.
    pub fn is_intertwiner(&self, target: &Module, f: &Matrix) -> bool {
        f.rows() == target.dim
            && f.cols() == self.dim
            && self.actions.iter().zip(&target.actions).all(|(x, y)| f.dot(x) == y.dot(f))
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            group: self.group,
            field: self.field.desc().clone(),
            dim: self.dim,
            actions: self.actions.iter().map(|a| a.to_json()).collect(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn from_json(json: &ModuleJson) -> Result<Module> {
        let field = Field::from_desc(&json.field)?;
        let group = GroupDesc::new(json.group.p, json.group.r)?;
        let actions = json.actions.iter().map(|a| Matrix::from_json(&field, a)).collect::<Result<Vec<_>>>()?;
        Module::new(group, &field, json.dim, actions, json.provenance.clone())
    }

    /// Canonical bytes of the mathematical data (provenance excluded).
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 + 4 * self.dim * self.dim * self.actions.len());
        let desc = self.field.desc();
        for v in [self.group.p, self.group.r, desc.n, self.dim as u32] {
            out.extend_from_slice(&v.to_le_bytes());
        }
        for &c in &desc.modulus {
            out.extend_from_slice(&c.to_le_bytes());
        }
        for a in &self.actions {
            for e in a.data() {
                out.extend_from_slice(&e.index().to_le_bytes());
            }
        }
        out
    }

    /// SHA-256 of the canonical bytes.
    pub fn fingerprint(&self) -> [u8; 32] {
        let digest = Sha256::digest(self.canonical_bytes());
        let mut out = [0u8; 32];
        out.copy_from_slice(&digest);
        out
    }
}
