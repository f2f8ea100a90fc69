//! Linear pi-points `t -> sum lambda_i x_i` of kE over finite extensions K,
//! Jordan types of restrictions, rank-variety supports and point modules.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Field, FieldDesc, FieldElem, Matrix};
use crate::modrep::decompose::{linear_combination, probe_points};
use crate::modrep::{GroupDesc, Module};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiPoint {
    group: GroupDesc,
    field: Field,
    lambda: Vec<FieldElem>,
}

/// A normalized representative of a point of P^{r-1}(K): packed field
/// elements with first nonzero coordinate 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint {
    pub coords: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiPointJson {
    pub p: u32,
    pub r: u32,
    #[serde(rename = "K")]
    pub field: FieldDesc,
    pub lambda: Vec<u32>,
}

/// `blocks[i-1]` = number of Jordan blocks of size i, for i = 1..p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JordanType {
    pub blocks: Vec<usize>,
}

impl JordanType {
    /// From `ranks[j] = rank U^j`, j = 0..=p.
    pub fn from_ranks(ranks: &[usize]) -> JordanType {
        let p = ranks.len() - 1;
        let blocks = (1..=p)
            .map(|i| {
                let next = if i < p { ranks[i + 1] } else { 0 };
                ranks[i - 1] + next - 2 * ranks[i]
            })
            .collect();
        JordanType { blocks }
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().enumerate().map(|(i, a)| (i + 1) * a).sum()
    }

    /// Free over K[t]/(t^p): only blocks of size p.
    pub fn is_projective(&self) -> bool {
        self.blocks[..self.blocks.len() - 1].iter().all(|&a| a == 0)
    }
}

impl PiPoint {
    pub fn new(group: GroupDesc, field: &Field, lambda: Vec<FieldElem>) -> Result<PiPoint> {
        if field.p() != group.p {
            return Err(Error::WrongCharacteristic { field: field.p(), group: group.p });
        }
        if lambda.len() != group.r as usize {
            return Err(Error::Dimension(format!("{} coordinates for rank {}", lambda.len(), group.r)));
        }
        if lambda.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroPiPoint);
        }
        if lambda.iter().any(|c| c.index() >= field.order()) {
            return Err(Error::Dimension("coordinate outside the field".into()));
        }
        Ok(PiPoint { group, field: field.clone(), lambda })
    }

    pub fn from_point(group: GroupDesc, field: &Field, point: &ProjPoint) -> Result<PiPoint> {
        let lambda = point.coords.iter().map(|&c| field.from_index(c)).collect();
        PiPoint::new(group, field, lambda)
    }

    pub fn group(&self) -> GroupDesc {
        self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn lambda(&self) -> &[FieldElem] {
        &self.lambda
    }

    pub fn proj_point(&self) -> ProjPoint {
        normalize(&self.field, &self.lambda)
    }

    /// `alpha_{c lambda}`.
    pub fn scaled(&self, c: FieldElem) -> Result<PiPoint> {
        let lambda = self.lambda.iter().map(|&l| self.field.mul(c, l)).collect();
        PiPoint::new(self.group, &self.field, lambda)
    }

    /// Coordinatewise Frobenius `lambda_i -> lambda_i^(p^s)`.
    pub fn frobenius(&self, s: u32) -> PiPoint {
        let lambda = self.lambda.iter().map(|&l| self.field.frobenius(l, s)).collect();
        PiPoint { group: self.group, field: self.field.clone(), lambda }
    }

    pub fn to_json(&self) -> PiPointJson {
        PiPointJson {
            p: self.group.p,
            r: self.group.r,
            field: self.field.desc().clone(),
            lambda: self.lambda.iter().map(|c| c.index()).collect(),
        }
    }

    pub fn from_json(json: &PiPointJson) -> Result<PiPoint> {
        let group = GroupDesc::new(json.p, json.r)?;
        let field = Field::from_desc(&json.field)?;
        if json.lambda.iter().any(|&c| c >= field.order()) {
            return Err(Error::Parse("coordinate outside the field".into()));
        }
        PiPoint::new(group, &field, json.lambda.iter().map(|&c| field.from_index(c)).collect())
    }

    fn base_changed(&self, m: &Module) -> Result<Module> {
        if m.group() != self.group {
            return Err(Error::GroupMismatch(format!("{:?} vs {:?}", m.group(), self.group)));
        }
        m.base_change(&self.field)
    }

    /// `U = sum lambda_i X_i` on `M (x) K` and its Jordan type.
    pub fn restrict(&self, m: &Module) -> Result<(Matrix, JordanType)> {
        let mk = self.base_changed(m)?;
        let u = linear_combination(&mk, &self.lambda);
        let p = self.group.p as usize;
        let mut ranks = vec![mk.dim()];
        let mut pw = Matrix::identity(&self.field, mk.dim());
        for _ in 0..p {
            pw = pw.dot(&u);
            ranks.push(pw.rank());
        }
        debug_assert_eq!(ranks[p], 0);
        Ok((u, JordanType::from_ranks(&ranks)))
    }

    pub fn jordan_type(&self, m: &Module) -> Result<JordanType> {
        Ok(self.restrict(m)?.1)
    }

    /// Whether the restriction of `M (x) K` along alpha is projective.
    pub fn thick_member(&self, m: &Module) -> Result<bool> {
        Ok(self.jordan_type(m)?.is_projective())
    }

    /// `chi_alpha(M) = dim_K Hom(alpha^*(M_K), K)`: the number of Jordan
    /// blocks, cross-checked against `dim - rank U`.
    pub fn chi(&self, m: &Module) -> Result<usize> {
        let (u, jt) = self.restrict(m)?;
        let direct = m.dim() - u.rank();
        if direct != jt.num_blocks() {
            return Err(Error::Unavailable(format!("block count {} differs from corank {direct}", jt.num_blocks())));
        }
        Ok(direct)
    }

    /// `KE / u_lambda KE`, a K-module supported exactly at `[lambda]`.
    pub fn witness_module(&self) -> Module {
        let reg = Module::regular(self.group, &self.field);
        let u = linear_combination(&reg, &self.lambda);
        let image = u.transpose().row_space().0;
        let (q, _) = reg.quotient(&image).expect("image of a module map is a submodule");
        q.with_provenance(format!("W{}", point_label(&self.field, &self.proj_point())))
    }

    /// `res^K_k Hom_{K[t]/(t^p)}(KE, K)` for the base field `k` of K: the
    /// linear forms on KE vanishing on `u_lambda KE`, with `(g f)(x) = f(xg)`.
    pub fn point_module(&self, base: &Field) -> Result<Module> {
        if !base.embeds_into(&self.field) {
            return Err(Error::NotExtension(format!("{:?}", self.field), format!("{base:?}")));
        }
        // f -> f(- x_i) is the transpose of x_i on the quotient
        let over_k_big = self.witness_module().transpose_dual();
        let out = if base == &self.field {
            over_k_big
        } else if base.n() == 1 {
            over_k_big.restrict_scalars()
        } else {
            return Err(Error::Unavailable("restriction of scalars to a non-prime subfield".into()));
        };
        Ok(out.with_provenance(format!("Delta{}", point_label(&self.field, &self.proj_point()))))
    }
}

fn normalize(field: &Field, lambda: &[FieldElem]) -> ProjPoint {
    let lead = lambda.iter().find(|c| !c.is_zero()).copied().expect("nonzero point");
    let inv = field.inv(lead).expect("nonzero");
    ProjPoint { coords: lambda.iter().map(|&c| field.mul(c, inv).index()).collect() }
}

fn point_label(field: &Field, p: &ProjPoint) -> String {
    let parts: Vec<String> = p.coords.iter().map(|c| c.to_string()).collect();
    format!("[{}]/GF({}^{})", parts.join(":"), field.p(), field.n())
}

pub fn pipoint_make(group: GroupDesc, field: &Field, lambda: Vec<FieldElem>) -> Result<PiPoint> {
    PiPoint::new(group, field, lambda)
}

/// All points of P^{r-1}(K), normalized, in a fixed order.
pub fn proj_points(field: &Field, r: u32) -> Vec<ProjPoint> {
    let mut pts: Vec<ProjPoint> = probe_points(field, r as usize, usize::MAX)
        .into_iter()
        .map(|v| ProjPoint { coords: v.iter().map(|c| c.index()).collect() })
        .collect();
    pts.sort();
    pts
}

/// `(q^r - 1) / (q - 1)`.
pub fn proj_point_count(q: u64, r: u32) -> u64 {
    (0..r).map(|i| q.pow(i)).sum()
}

/// `{[lambda] in P^{r-1}(K) : alpha_lambda^*(M_K) not projective}`, sorted.
pub fn supp_pi(m: &Module, field: &Field) -> Result<Vec<ProjPoint>> {
    let mut out = Vec::new();
    for pt in proj_points(field, m.group().r) {
        let alpha = PiPoint::from_point(m.group(), field, &pt)?;
        if !alpha.thick_member(m)? {
            out.push(pt);
        }
    }
    Ok(out)
}

/// Orbit of a point under the Frobenius of K over the subfield of order
/// `base_order` (coordinatewise `c -> c^base_order`).
pub fn galois_orbit(field: &Field, point: &ProjPoint, base: &Field) -> BTreeSet<ProjPoint> {
    let s = base.n();
    let steps = field.n() / s;
    let mut out = BTreeSet::new();
    let mut cur: Vec<FieldElem> = point.coords.iter().map(|&c| field.from_index(c)).collect();
    for _ in 0..steps.max(1) {
        out.insert(normalize(field, &cur));
        cur = cur.iter().map(|&c| field.frobenius(c, s)).collect();
    }
    out
}

/// Frobenius orbits of P^{r-1}(K) over k, each as a sorted point list;
/// orbits are sorted by their least element.
pub fn galois_orbits(field: &Field, r: u32, base: &Field) -> Vec<Vec<ProjPoint>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for pt in proj_points(field, r) {
        if seen.contains(&pt) {
            continue;
        }
        let orbit = galois_orbit(field, &pt, base);
        seen.extend(orbit.iter().cloned());
        out.push(orbit.into_iter().collect());
    }
    out
}
