//! Pair classes, the fixed catalog of pair invariants, and the operations
//! of a built case table: products, the bilinear form, automorphisms, and
//! adjoint eigenspaces.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exactnum::matrix::{mat_reduce, QFMatrix};
use crate::exactnum::{ExactError, QFElement};

use super::GriessError;

/// Classes of idempotent pairs, named by the order `N` of the product of
/// their attached involutions and a letter distinguishing classes of equal
/// order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairClass {
    OneA,
    TwoA,
    ThreeA,
    FourA,
    FiveA,
    SixA,
    FourB,
    TwoB,
    ThreeC,
}

impl PairClass {
    /// All classes, in catalog order.
    pub fn all() -> [PairClass; 9] {
        [
            PairClass::OneA,
            PairClass::TwoA,
            PairClass::ThreeA,
            PairClass::FourA,
            PairClass::FiveA,
            PairClass::SixA,
            PairClass::FourB,
            PairClass::TwoB,
            PairClass::ThreeC,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            PairClass::OneA => "1A",
            PairClass::TwoA => "2A",
            PairClass::ThreeA => "3A",
            PairClass::FourA => "4A",
            PairClass::FiveA => "5A",
            PairClass::SixA => "6A",
            PairClass::FourB => "4B",
            PairClass::TwoB => "2B",
            PairClass::ThreeC => "3C",
        }
    }

    /// Order of the product of the two attached involutions.
    pub fn order(&self) -> u64 {
        match self {
            PairClass::OneA => 1,
            PairClass::TwoA | PairClass::TwoB => 2,
            PairClass::ThreeA | PairClass::ThreeC => 3,
            PairClass::FourA | PairClass::FourB => 4,
            PairClass::FiveA => 5,
            PairClass::SixA => 6,
        }
    }
}

impl std::fmt::Display for PairClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PairClass {
    type Err = GriessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PairClass::all()
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| GriessError::Parse {
                line: 0,
                reason: format!("unknown pair class {s:?}"),
            })
    }
}

/// Invariants of one pair class: the order `N` and the scaled inner
/// products `lambda1 = 4<e,f>` and, for pairs at distance two in the orbit,
/// `lambda2 = 4<e,e^(tau_f tau_e)>`. `lambda2` is `None` when the orbit has
/// no distance-two pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CasePairData {
    pub class: PairClass,
    pub order: u64,
    pub lambda1: BigRational,
    pub lambda2: Option<BigRational>,
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The fixed catalog of pair invariants, one entry per class.
pub fn catalog() -> Vec<CasePairData> {
    let entry = |class: PairClass, l1: (i64, i64), l2: Option<(i64, i64)>| CasePairData {
        class,
        order: class.order(),
        lambda1: rat(l1.0, l1.1),
        lambda2: l2.map(|(n, d)| rat(n, d)),
    };
    vec![
        entry(PairClass::OneA, (1, 1), None),
        entry(PairClass::TwoA, (1, 8), None),
        entry(PairClass::ThreeA, (13, 256), Some((13, 256))),
        entry(PairClass::FourA, (1, 32), Some((0, 1))),
        entry(PairClass::FiveA, (3, 128), Some((3, 128))),
        entry(PairClass::SixA, (5, 256), Some((13, 256))),
        entry(PairClass::FourB, (1, 64), Some((1, 8))),
        entry(PairClass::TwoB, (0, 1), None),
        entry(PairClass::ThreeC, (1, 64), Some((1, 64))),
    ]
}

/// Catalog entry for one class.
pub fn catalog_entry(class: PairClass) -> CasePairData {
    catalog()
        .into_iter()
        .find(|d| d.class == class)
        .expect("catalog covers every class")
}

/// Names of basis vectors appearing in case files.
///
/// `e` and `f` are the generating idempotents; suffixes record images under
/// the involutions `tau_e` and `tau_f` (applied left to right), `alpha_ef`
/// is the symmetrized product `alpha(e,f)`, and `a`, `c` are the
/// eigenvector basis elements used by the three-dimensional case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisLabel {
    E,
    ETf,
    ETfTe,
    F,
    FTe,
    AlphaEF,
    A,
    C,
}

impl BasisLabel {
    pub fn name(&self) -> &'static str {
        match self {
            BasisLabel::E => "e",
            BasisLabel::ETf => "e_tf",
            BasisLabel::ETfTe => "e_tfte",
            BasisLabel::F => "f",
            BasisLabel::FTe => "f_te",
            BasisLabel::AlphaEF => "alpha_ef",
            BasisLabel::A => "a",
            BasisLabel::C => "c",
        }
    }

    fn all() -> [BasisLabel; 8] {
        [
            BasisLabel::E,
            BasisLabel::ETf,
            BasisLabel::ETfTe,
            BasisLabel::F,
            BasisLabel::FTe,
            BasisLabel::AlphaEF,
            BasisLabel::A,
            BasisLabel::C,
        ]
    }

    /// True for labels naming idempotent axes rather than derived vectors.
    pub fn is_axis(&self) -> bool {
        !matches!(
            self,
            BasisLabel::AlphaEF | BasisLabel::A | BasisLabel::C
        )
    }
}

impl std::fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisLabel {
    type Err = GriessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BasisLabel::all()
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| GriessError::Parse {
                line: 0,
                reason: format!("unknown basis label {s:?}"),
            })
    }
}

/// An algebra element as coordinates over a case table's basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GriessElement {
    coords: Vec<QFElement>,
}

impl GriessElement {
    pub fn new(coords: Vec<QFElement>) -> Self {
        GriessElement { coords }
    }

    pub fn zero(dim: usize) -> Self {
        GriessElement {
            coords: vec![QFElement::zero(); dim],
        }
    }

    /// The `idx`-th standard basis vector.
    pub fn basis(dim: usize, idx: usize) -> Self {
        assert!(idx < dim, "basis index {idx} out of range for dim {dim}");
        let mut coords = vec![QFElement::zero(); dim];
        coords[idx] = QFElement::one();
        GriessElement { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[QFElement] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &QFElement {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(QFElement::is_zero)
    }

    fn check_same_dim(&self, other: &Self) -> Result<(), ExactError> {
        if self.dim() != other.dim() {
            return Err(ExactError::Shape(format!(
                "element dimensions differ: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    /// Coordinatewise sum. Fails on a dimension or discriminant mismatch.
    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_same_dim(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_, _>>()?;
        Ok(GriessElement { coords })
    }

    /// Coordinatewise difference. Fails on a dimension or discriminant
    /// mismatch.
    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_same_dim(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.try_sub(b))
            .collect::<Result<_, _>>()?;
        Ok(GriessElement { coords })
    }

    pub fn neg(&self) -> Self {
        GriessElement {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Scales every coordinate. Fails on a discriminant mismatch.
    pub fn try_scale(&self, factor: &QFElement) -> Result<Self, ExactError> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.try_mul(factor))
            .collect::<Result<_, _>>()?;
        Ok(GriessElement { coords })
    }

    /// Scales by a rational, which never mixes discriminants.
    pub fn scale_rat(&self, factor: &BigRational) -> Self {
        self.try_scale(&QFElement::from_big(factor.clone()))
            .expect("rational scaling preserves the discriminant")
    }
}

/// A fully built case: basis, closed product table, Gram matrix, and the
/// automorphisms generated by the idempotent involutions.
#[derive(Debug, Clone)]
pub struct CaseTable {
    pub(crate) class: PairClass,
    pub(crate) lambda1: BigRational,
    pub(crate) lambda2: Option<BigRational>,
    pub(crate) basis: Vec<BasisLabel>,
    /// `products[i][j]` holds the coordinates of `basis_i * basis_j`.
    pub(crate) products: Vec<Vec<GriessElement>>,
    pub(crate) gram: QFMatrix,
    pub(crate) autos: BTreeMap<String, QFMatrix>,
    /// Idempotent axes that are not basis vectors, by name.
    pub(crate) embedded: BTreeMap<String, GriessElement>,
}

impl CaseTable {
    pub fn class(&self) -> PairClass {
        self.class
    }

    pub fn lambda1(&self) -> &BigRational {
        &self.lambda1
    }

    pub fn lambda2(&self) -> Option<&BigRational> {
        self.lambda2.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    pub fn basis_index(&self, label: BasisLabel) -> Option<usize> {
        self.basis.iter().position(|&l| l == label)
    }

    /// The standard basis element for a label.
    pub fn basis_element(&self, label: BasisLabel) -> Result<GriessElement, GriessError> {
        let idx = self
            .basis_index(label)
            .ok_or(GriessError::LabelNotInBasis(label))?;
        Ok(GriessElement::basis(self.dim(), idx))
    }

    pub fn product(&self, i: usize, j: usize) -> &GriessElement {
        &self.products[i][j]
    }

    pub fn gram(&self) -> &QFMatrix {
        &self.gram
    }

    pub fn automorphism_names(&self) -> Vec<String> {
        self.autos.keys().cloned().collect()
    }

    pub fn automorphism(&self, name: &str) -> Result<&QFMatrix, GriessError> {
        self.autos
            .get(name)
            .ok_or_else(|| GriessError::UnknownAutomorphism(name.to_string()))
    }

    /// All idempotent axes of the case: Ising basis vectors in basis order,
    /// then embedded axes by name.
    pub fn axes(&self) -> Vec<(String, GriessElement)> {
        let mut out = Vec::new();
        for (i, label) in self.basis.iter().enumerate() {
            if label.is_axis() {
                out.push((label.name().to_string(), GriessElement::basis(self.dim(), i)));
            }
        }
        for (name, elem) in &self.embedded {
            out.push((name.clone(), elem.clone()));
        }
        out
    }

    /// One axis by name, whether a basis vector or embedded.
    pub fn axis(&self, name: &str) -> Option<GriessElement> {
        self.axes()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, elem)| elem)
    }

    fn check_dim(&self, x: &GriessElement) -> Result<(), GriessError> {
        if x.dim() != self.dim() {
            return Err(GriessError::DimensionMismatch {
                got: x.dim(),
                want: self.dim(),
            });
        }
        Ok(())
    }

    /// Renders an element as `coeff*label` terms.
    pub fn format_element(&self, x: &GriessElement) -> String {
        let mut parts = Vec::new();
        for (i, c) in x.coords().iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{}*{}", c, self.basis[i]));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Bilinear product of two elements via the closed product table.
pub fn multiply(
    table: &CaseTable,
    x: &GriessElement,
    y: &GriessElement,
) -> Result<GriessElement, GriessError> {
    table.check_dim(x)?;
    table.check_dim(y)?;
    let mut out = GriessElement::zero(table.dim());
    for (i, xi) in x.coords().iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.coords().iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let weight = xi.try_mul(yj)?;
            out = out.try_add(&table.product(i, j).try_scale(&weight)?)?;
        }
    }
    Ok(out)
}

/// Value of the invariant bilinear form.
pub fn inner(
    table: &CaseTable,
    x: &GriessElement,
    y: &GriessElement,
) -> Result<QFElement, GriessError> {
    table.check_dim(x)?;
    table.check_dim(y)?;
    let gy = table.gram.mul_vec(y.coords())?;
    let mut acc = QFElement::zero();
    for (xi, gyi) in x.coords().iter().zip(&gy) {
        acc = acc.try_add(&xi.try_mul(gyi)?)?;
    }
    Ok(acc)
}

/// The symmetrized product `alpha(x,y) = xy - (1/16)(x + y)`.
pub fn alpha(
    table: &CaseTable,
    x: &GriessElement,
    y: &GriessElement,
) -> Result<GriessElement, GriessError> {
    let prod = multiply(table, x, y)?;
    let shift = x.try_add(y)?.try_scale(&QFElement::ratio(1, 16))?;
    Ok(prod.try_sub(&shift)?)
}

/// Applies a named automorphism to an element.
pub fn automorphism_apply(
    table: &CaseTable,
    name: &str,
    x: &GriessElement,
) -> Result<GriessElement, GriessError> {
    table.check_dim(x)?;
    let m = table.automorphism(name)?;
    Ok(GriessElement::new(m.mul_vec(x.coords())?))
}

/// Matrix of left multiplication by `x` on the basis: column `j` holds the
/// coordinates of `x * basis_j`.
pub fn adjoint_matrix(table: &CaseTable, x: &GriessElement) -> Result<QFMatrix, GriessError> {
    table.check_dim(x)?;
    let n = table.dim();
    let mut cols: Vec<GriessElement> = Vec::with_capacity(n);
    for j in 0..n {
        let mut col = GriessElement::zero(n);
        for (i, xi) in x.coords().iter().enumerate() {
            if !xi.is_zero() {
                col = col.try_add(&table.product(i, j).try_scale(xi)?)?;
            }
        }
        cols.push(col);
    }
    let rows: Vec<Vec<QFElement>> = (0..n)
        .map(|i| (0..n).map(|j| cols[j].coord(i).clone()).collect())
        .collect();
    Ok(QFMatrix::from_rows(rows)?)
}

/// Residual of the axial product rule for the pair `(a, x)`: the rule's
/// left side minus its right side. `tau_name` names the involution
/// attached to `a`. Zero whenever `a` and `x` are axes of a valid table.
pub fn axial_product_residual(
    table: &CaseTable,
    a: &GriessElement,
    x: &GriessElement,
    tau_name: &str,
) -> Result<GriessElement, GriessError> {
    let al = alpha(table, a, x)?;
    let lhs = multiply(table, a, &al)?;
    let ax = inner(table, a, x)?;
    let x_tau = automorphism_apply(table, tau_name, x)?;
    // a * alpha(a,x) = (7/16) alpha(a,x) + (12<a,x> - 25/256) a
    //               + (7/512)(x + x^tau_a).
    let c_a = ax
        .try_mul(&QFElement::integer(12))?
        .try_sub(&QFElement::ratio(25, 256))?;
    let rhs = al
        .try_scale(&QFElement::ratio(7, 16))?
        .try_add(&a.try_scale(&c_a)?)?
        .try_add(&x.try_add(&x_tau)?.try_scale(&QFElement::ratio(7, 512))?)?;
    Ok(lhs.try_sub(&rhs)?)
}

/// Residual of the axial inner rule for `(a, x)`:
/// `<a, alpha(a,x)> - ((31/16)<a,x> - 1/64)`. Zero on a valid table.
pub fn axial_inner_residual(
    table: &CaseTable,
    a: &GriessElement,
    x: &GriessElement,
) -> Result<QFElement, GriessError> {
    let al = alpha(table, a, x)?;
    let lhs = inner(table, a, &al)?;
    let rhs = inner(table, a, x)?
        .try_mul(&QFElement::ratio(31, 16))?
        .try_sub(&QFElement::ratio(1, 64))?;
    Ok(lhs.try_sub(&rhs)?)
}

/// Residual of the exchange identity tying the case invariants to the
/// images of `e` and `f` under each other's involutions. Zero on a valid
/// table.
pub fn exchange_residual(table: &CaseTable) -> Result<GriessElement, GriessError> {
    let missing = |name: &str| GriessError::ProductViolation(format!("case lacks the axis {name}"));
    let e = table.axis("e").ok_or_else(|| missing("e"))?;
    let f = table.axis("f").ok_or_else(|| missing("f"))?;
    let l1 = QFElement::from_big(table.lambda1.clone());
    let l2 = match &table.lambda2 {
        Some(l) => QFElement::from_big(l.clone()),
        None => {
            return Err(GriessError::FormViolation(
                "exchange residual needs lambda2".to_string(),
            ))
        }
    };
    let e_tf = automorphism_apply(table, "tau_f", &e)?;
    let f_te = automorphism_apply(table, "tau_e", &f)?;
    let e_tfte = automorphism_apply(table, "tau_e", &e_tf)?;
    let f_tetf = automorphism_apply(table, "tau_f", &f_te)?;
    // (1/7)(2048 l1^2 - 144 l1 + 33/16 + 8 l2)(e - f)
    //   + (16 l1 - 3/8)(f^tau_e - e^tau_f)
    //   + (1/16)(e^(tau_f tau_e) - f^(tau_e tau_f))
    //   - (alpha(e, e^tau_f) - alpha(f, f^tau_e)) = 0.
    let c1 = l1
        .try_mul(&l1)?
        .try_mul(&QFElement::integer(2048))?
        .try_sub(&l1.try_mul(&QFElement::integer(144))?)?
        .try_add(&QFElement::ratio(33, 16))?
        .try_add(&l2.try_mul(&QFElement::integer(8))?)?
        .try_mul(&QFElement::ratio(1, 7))?;
    let c2 = l1
        .try_mul(&QFElement::integer(16))?
        .try_sub(&QFElement::ratio(3, 8))?;
    let term1 = e.try_sub(&f)?.try_scale(&c1)?;
    let term2 = f_te.try_sub(&e_tf)?.try_scale(&c2)?;
    let term3 = e_tfte
        .try_sub(&f_tetf)?
        .try_scale(&QFElement::ratio(1, 16))?;
    let term4 = alpha(table, &e, &e_tf)?.try_sub(&alpha(table, &f, &f_te)?)?;
    Ok(term1.try_add(&term2)?.try_add(&term3)?.try_sub(&term4)?)
}

/// Basis of the eigenspace of `ad_x` for the given eigenvalue, as returned
/// by kernel extraction (each vector's first nonzero coordinate is 1).
pub fn eigenspace(
    table: &CaseTable,
    x: &GriessElement,
    eigenvalue: &QFElement,
) -> Result<Vec<GriessElement>, GriessError> {
    let mut shifted = adjoint_matrix(table, x)?;
    for i in 0..table.dim() {
        let entry = shifted.get(i, i).try_sub(eigenvalue)?;
        shifted.set(i, i, entry);
    }
    let reduction = mat_reduce(&shifted);
    Ok(reduction
        .kernel
        .into_iter()
        .map(GriessElement::new)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A two-dimensional commutative test algebra: an idempotent `e` with
    /// `e*e = 2e` and an orthogonal idempotent `a` with `a*a = a`.
    fn toy_table() -> CaseTable {
        let ee = GriessElement::new(vec![QFElement::integer(2), QFElement::zero()]);
        let ea = GriessElement::zero(2);
        let aa = GriessElement::new(vec![QFElement::zero(), QFElement::one()]);
        let products = vec![vec![ee, ea.clone()], vec![ea, aa]];
        let gram = QFMatrix::from_rows(vec![
            vec![QFElement::ratio(1, 4), QFElement::zero()],
            vec![QFElement::zero(), QFElement::one()],
        ])
        .unwrap();
        let mut autos = BTreeMap::new();
        autos.insert("tau_e".to_string(), QFMatrix::identity(2));
        CaseTable {
            class: PairClass::OneA,
            lambda1: rat(1, 1),
            lambda2: None,
            basis: vec![BasisLabel::E, BasisLabel::A],
            products,
            gram,
            autos,
            embedded: BTreeMap::new(),
        }
    }

    #[test]
    fn catalog_is_complete_and_ordered() {
        let cat = catalog();
        assert_eq!(cat.len(), 9);
        let names: Vec<&str> = cat.iter().map(|d| d.class.name()).collect();
        assert_eq!(names, ["1A", "2A", "3A", "4A", "5A", "6A", "4B", "2B", "3C"]);
        for d in &cat {
            assert_eq!(d.order, d.class.order());
        }
        let five_a = catalog_entry(PairClass::FiveA);
        assert_eq!(five_a.lambda1, rat(3, 128));
        assert_eq!(five_a.lambda2, Some(rat(3, 128)));
        let three_c = catalog_entry(PairClass::ThreeC);
        assert_eq!(three_c.lambda1, rat(1, 64));
        let four_a = catalog_entry(PairClass::FourA);
        assert_eq!(four_a.lambda2, Some(rat(0, 1)));
        assert_eq!(catalog_entry(PairClass::TwoA).lambda2, None);
    }

    #[test]
    fn class_names_round_trip() {
        for class in PairClass::all() {
            assert_eq!(class.name().parse::<PairClass>().unwrap(), class);
        }
        assert!("7Z".parse::<PairClass>().is_err());
    }

    #[test]
    fn basis_labels_round_trip() {
        for label in BasisLabel::all() {
            assert_eq!(label.name().parse::<BasisLabel>().unwrap(), label);
        }
        assert!("alpha_fg".parse::<BasisLabel>().is_err());
    }

    #[test]
    fn multiplication_is_bilinear_on_the_toy_algebra() {
        let t = toy_table();
        let e = t.basis_element(BasisLabel::E).unwrap();
        let a = t.basis_element(BasisLabel::A).unwrap();
        let x = e
            .try_add(&a.try_scale(&QFElement::integer(3)).unwrap())
            .unwrap();
        let xx = multiply(&t, &x, &x).unwrap();
        // (e + 3a)^2 = 2e + 9a.
        let expected = GriessElement::new(vec![QFElement::integer(2), QFElement::integer(9)]);
        assert_eq!(xx, expected);
        assert_eq!(multiply(&t, &x, &e).unwrap(), multiply(&t, &e, &x).unwrap());
    }

    #[test]
    fn inner_product_uses_the_gram_matrix() {
        let t = toy_table();
        let e = t.basis_element(BasisLabel::E).unwrap();
        let a = t.basis_element(BasisLabel::A).unwrap();
        assert_eq!(inner(&t, &e, &e).unwrap(), QFElement::ratio(1, 4));
        assert_eq!(inner(&t, &e, &a).unwrap(), QFElement::zero());
        let x = e.try_add(&a).unwrap();
        assert_eq!(inner(&t, &x, &x).unwrap(), QFElement::ratio(5, 4));
    }

    #[test]
    fn alpha_subtracts_the_linear_part() {
        let t = toy_table();
        let e = t.basis_element(BasisLabel::E).unwrap();
        let a = t.basis_element(BasisLabel::A).unwrap();
        let got = alpha(&t, &e, &a).unwrap();
        let expected = e
            .try_add(&a)
            .unwrap()
            .try_scale(&QFElement::ratio(-1, 16))
            .unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn adjoint_and_eigenspaces() {
        let t = toy_table();
        let e = t.basis_element(BasisLabel::E).unwrap();
        let ad = adjoint_matrix(&t, &e).unwrap();
        assert_eq!(ad.get(0, 0), &QFElement::integer(2));
        assert_eq!(ad.get(1, 1), &QFElement::zero());

        let top = eigenspace(&t, &e, &QFElement::integer(2)).unwrap();
        assert_eq!(top.len(), 1);
        assert_eq!(top[0], e);
        let null = eigenspace(&t, &e, &QFElement::zero()).unwrap();
        assert_eq!(null.len(), 1);
        assert_eq!(null[0], t.basis_element(BasisLabel::A).unwrap());
        assert!(eigenspace(&t, &e, &QFElement::ratio(1, 2))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn dimension_mismatches_are_reported() {
        let t = toy_table();
        let bad = GriessElement::zero(3);
        assert!(matches!(
            multiply(&t, &bad, &bad),
            Err(GriessError::DimensionMismatch { got: 3, want: 2 })
        ));
    }

    #[test]
    fn element_formatting() {
        let t = toy_table();
        let e = t.basis_element(BasisLabel::E).unwrap();
        let a = t.basis_element(BasisLabel::A).unwrap();
        let x = e
            .try_scale(&QFElement::ratio(-7, 256))
            .unwrap()
            .try_add(&a)
            .unwrap();
        assert_eq!(t.format_element(&x), "-7/256*e + 1/1*a");
        assert_eq!(t.format_element(&GriessElement::zero(2)), "0");
    }
}
