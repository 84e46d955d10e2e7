//! Case file parsing and table construction.
//!
//! A case file supplies the seed data for one pair class: the basis, the few
//! products that symmetry cannot recover, and for the three-dimensional case
//! the expansion of `f` over the eigenvector basis. The builders close the
//! product table under the dihedral symmetry of the axis orbit, derive the
//! Gram matrix from invariance of the form, recover the involutions from
//! spectral projectors, and verify the finished table against the defining
//! identities before handing it out.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::env;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use crate::exactnum::matrix::{mat_reduce, QFMatrix};
use crate::exactnum::QFElement;

use super::definition::{
    adjoint_matrix, automorphism_apply, axial_inner_residual, axial_product_residual,
    catalog_entry, eigenspace, exchange_residual, inner, multiply, rat, BasisLabel, CaseTable,
    GriessElement, PairClass,
};
use super::GriessError;

/// Environment variable naming a directory of replacement case files.
pub const CASE_DIR_ENV: &str = "GRIESSKIT_CASE_DIR";

/// A linear combination of basis elements with rational coefficients.
pub type Combination = Vec<(BasisLabel, BigRational)>;

/// Parsed contents of one case file.
#[derive(Debug, Clone)]
pub struct CaseFile {
    pub class: PairClass,
    pub lambda1: BigRational,
    pub lambda2: Option<BigRational>,
    /// Declared discriminant of the coefficient field; 1 for rational data.
    pub disc: u64,
    pub basis: Vec<BasisLabel>,
    pub products: Vec<((BasisLabel, BasisLabel), Combination)>,
    pub decompositions: Vec<(BasisLabel, Combination)>,
}

fn parse_err(line: usize, reason: impl Into<String>) -> GriessError {
    GriessError::Parse {
        line,
        reason: reason.into(),
    }
}

fn parse_big_rational(text: &str, line: usize) -> Result<BigRational, GriessError> {
    BigRational::from_str(text).map_err(|_| parse_err(line, format!("bad rational {text:?}")))
}

fn parse_label(text: &str, line: usize) -> Result<BasisLabel, GriessError> {
    text.parse::<BasisLabel>()
        .map_err(|_| parse_err(line, format!("unknown basis label {text:?}")))
}

fn parse_terms(text: &str, line: usize) -> Result<Combination, GriessError> {
    let mut terms = Vec::new();
    for token in text.split_whitespace() {
        let (label, coeff) = token
            .split_once(':')
            .ok_or_else(|| parse_err(line, format!("expected label:coeff, found {token:?}")))?;
        terms.push((parse_label(label, line)?, parse_big_rational(coeff, line)?));
    }
    Ok(terms)
}

/// Parses case file text. Line numbers in errors are 1-based; line 0 marks
/// a file-level problem.
pub fn parse_case_file(text: &str) -> Result<CaseFile, GriessError> {
    let mut class = None;
    let mut lambda1 = None;
    let mut lambda2 = None;
    let mut disc = None;
    let mut basis: Vec<BasisLabel> = Vec::new();
    let mut products = Vec::new();
    let mut decompositions = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| parse_err(line, "expected key = value"))?;
        let words: Vec<&str> = key.split_whitespace().collect();
        let value = value.trim();
        match words.as_slice() {
            ["class"] => {
                class = Some(
                    value
                        .parse::<PairClass>()
                        .map_err(|_| parse_err(line, format!("unknown pair class {value:?}")))?,
                );
            }
            ["lambda1"] => lambda1 = Some(parse_big_rational(value, line)?),
            ["lambda2"] => lambda2 = Some(parse_big_rational(value, line)?),
            ["disc"] => {
                disc = Some(
                    value
                        .parse::<u64>()
                        .map_err(|_| parse_err(line, format!("bad discriminant {value:?}")))?,
                );
            }
            ["basis"] => {
                for word in value.split_whitespace() {
                    basis.push(parse_label(word, line)?);
                }
            }
            ["product", a, b] => {
                let pair = (parse_label(a, line)?, parse_label(b, line)?);
                products.push((pair, parse_terms(value, line)?));
            }
            ["decompose", target] => {
                decompositions.push((parse_label(target, line)?, parse_terms(value, line)?));
            }
            _ => return Err(parse_err(line, format!("unrecognized key {:?}", key.trim()))),
        }
    }

    let class = class.ok_or_else(|| parse_err(0, "missing class"))?;
    let lambda1 = lambda1.ok_or_else(|| parse_err(0, "missing lambda1"))?;
    if basis.is_empty() {
        return Err(parse_err(0, "missing basis"));
    }
    let basis_set: BTreeSet<BasisLabel> = basis.iter().copied().collect();
    if basis_set.len() != basis.len() {
        return Err(parse_err(0, "duplicate basis label"));
    }

    let mut seen_pairs = BTreeSet::new();
    for ((a, b), terms) in &products {
        for label in [a, b] {
            if !basis_set.contains(label) {
                return Err(parse_err(0, format!("product uses {label}, not in basis")));
            }
        }
        let key = (*a.min(b), *a.max(b));
        if !seen_pairs.insert(key) {
            return Err(parse_err(0, format!("duplicate product line for {a} {b}")));
        }
        check_terms(terms, &basis_set)?;
    }

    let mut seen_targets = BTreeSet::new();
    for (target, terms) in &decompositions {
        if basis_set.contains(target) {
            return Err(parse_err(
                0,
                format!("decomposition target {target} is already a basis vector"),
            ));
        }
        if !seen_targets.insert(*target) {
            return Err(parse_err(0, format!("duplicate decomposition of {target}")));
        }
        check_terms(terms, &basis_set)?;
    }

    Ok(CaseFile {
        class,
        lambda1,
        lambda2,
        disc: disc.unwrap_or(1),
        basis,
        products,
        decompositions,
    })
}

fn check_terms(
    terms: &[(BasisLabel, BigRational)],
    basis: &BTreeSet<BasisLabel>,
) -> Result<(), GriessError> {
    let mut seen = BTreeSet::new();
    for (label, _) in terms {
        if !basis.contains(label) {
            return Err(parse_err(0, format!("term uses {label}, not in basis")));
        }
        if !seen.insert(*label) {
            return Err(parse_err(0, format!("repeated term label {label}")));
        }
    }
    Ok(())
}

fn case_file_name(class: PairClass) -> Result<&'static str, GriessError> {
    match class {
        PairClass::ThreeC => Ok("c3.case"),
        PairClass::FiveA => Ok("a5.case"),
        other => Err(GriessError::UnsupportedClass(other.name().to_string())),
    }
}

fn bundled_text(class: PairClass) -> Result<&'static str, GriessError> {
    match class {
        PairClass::ThreeC => Ok(include_str!("../../assets/c3.case")),
        PairClass::FiveA => Ok(include_str!("../../assets/a5.case")),
        other => Err(GriessError::UnsupportedClass(other.name().to_string())),
    }
}

fn check_declared_class(file: &CaseFile, class: PairClass) -> Result<(), GriessError> {
    if file.class != class {
        return Err(GriessError::CatalogMismatch(format!(
            "case file declares class {} but {} was requested",
            file.class, class
        )));
    }
    Ok(())
}

/// Loads the case file for a class, from `GRIESSKIT_CASE_DIR` when that
/// variable is set and from the bundled data otherwise.
pub fn load_case_file(class: PairClass) -> Result<CaseFile, GriessError> {
    match env::var_os(CASE_DIR_ENV) {
        Some(dir) => load_case_file_from(Path::new(&dir), class),
        None => {
            let file = parse_case_file(bundled_text(class)?)?;
            check_declared_class(&file, class)?;
            Ok(file)
        }
    }
}

/// Loads a case file from an explicit directory.
pub fn load_case_file_from(dir: &Path, class: PairClass) -> Result<CaseFile, GriessError> {
    let path = dir.join(case_file_name(class)?);
    let text = fs::read_to_string(&path).map_err(|err| GriessError::CaseFileRead {
        path: path.display().to_string(),
        reason: err.to_string(),
    })?;
    let file = parse_case_file(&text)?;
    check_declared_class(&file, class)?;
    Ok(file)
}

/// Builds and verifies the case table for one supported class.
pub fn build_case_table(class: PairClass) -> Result<CaseTable, GriessError> {
    build_from_case(&load_case_file(class)?)
}

/// Builds and verifies a table from parsed case data.
pub fn build_from_case(file: &CaseFile) -> Result<CaseTable, GriessError> {
    let table = match file.class {
        PairClass::ThreeC => build_c3(file)?,
        PairClass::FiveA => build_a5(file)?,
        other => return Err(GriessError::UnsupportedClass(other.name().to_string())),
    };
    verify_case_table(&table)?;
    let expected = catalog_entry(file.class);
    if expected.lambda1 != table.lambda1 || expected.lambda2 != table.lambda2 {
        return Err(GriessError::CatalogMismatch(format!(
            "built case has lambda1 = {}, lambda2 = {}; the catalog lists {} and {} for class {}",
            table.lambda1,
            fmt_opt(&table.lambda2),
            expected.lambda1,
            fmt_opt(&expected.lambda2),
            file.class
        )));
    }
    Ok(table)
}

fn fmt_opt(value: &Option<BigRational>) -> String {
    match value {
        Some(r) => r.to_string(),
        None => "none".to_string(),
    }
}

fn expect_basis(file: &CaseFile, want: &[BasisLabel]) -> Result<(), GriessError> {
    if file.basis.as_slice() != want {
        let found: Vec<&str> = file.basis.iter().map(BasisLabel::name).collect();
        let wanted: Vec<&str> = want.iter().map(BasisLabel::name).collect();
        return Err(parse_err(
            0,
            format!(
                "class {} expects basis {}, found {}",
                file.class,
                wanted.join(" "),
                found.join(" ")
            ),
        ));
    }
    Ok(())
}

fn element_from_terms(
    basis: &[BasisLabel],
    terms: &[(BasisLabel, BigRational)],
) -> Result<GriessElement, GriessError> {
    let mut coords = vec![QFElement::zero(); basis.len()];
    for (label, coeff) in terms {
        let idx = basis
            .iter()
            .position(|l| l == label)
            .ok_or(GriessError::LabelNotInBasis(*label))?;
        coords[idx] = QFElement::from_big(coeff.clone());
    }
    Ok(GriessElement::new(coords))
}

type PartialProducts = Vec<Vec<Option<GriessElement>>>;

fn products_from_file(file: &CaseFile) -> Result<PartialProducts, GriessError> {
    let n = file.basis.len();
    let mut products: PartialProducts = vec![vec![None; n]; n];
    for ((a, b), terms) in &file.products {
        let value = element_from_terms(&file.basis, terms)?;
        let i = file.basis.iter().position(|l| l == a).unwrap();
        let j = file.basis.iter().position(|l| l == b).unwrap();
        set_product(&mut products, &file.basis, i, j, value)?;
    }
    Ok(products)
}

fn set_product(
    products: &mut PartialProducts,
    basis: &[BasisLabel],
    i: usize,
    j: usize,
    value: GriessElement,
) -> Result<(), GriessError> {
    for (a, b) in [(i, j), (j, i)] {
        match &products[a][b] {
            None => products[a][b] = Some(value.clone()),
            Some(existing) if existing != &value => {
                return Err(GriessError::ClosureInconsistent(basis[a], basis[b]));
            }
            _ => {}
        }
    }
    Ok(())
}

fn complete_products(
    products: PartialProducts,
    basis: &[BasisLabel],
) -> Result<Vec<Vec<GriessElement>>, GriessError> {
    let mut rows = Vec::with_capacity(products.len());
    for (i, row) in products.into_iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, entry) in row.into_iter().enumerate() {
            out.push(entry.ok_or(GriessError::MissingProduct(basis[i], basis[j]))?);
        }
        rows.push(out);
    }
    Ok(rows)
}

/// Builds the three-dimensional table: products come straight from the
/// file, the Gram matrix from invariance plus the embedding of `f`, and
/// the involutions from spectral projectors.
fn build_c3(file: &CaseFile) -> Result<CaseTable, GriessError> {
    expect_basis(file, &[BasisLabel::E, BasisLabel::A, BasisLabel::C])?;
    let basis = file.basis.clone();
    let products = complete_products(products_from_file(file)?, &basis)?;

    // The orthogonality arguments below need e to act diagonally with the
    // stated eigenvalues.
    let e = GriessElement::basis(3, 0);
    let c_vec = GriessElement::basis(3, 2);
    if products[0][0] != e.try_scale(&QFElement::integer(2))? {
        return Err(GriessError::ProductViolation(
            "e must square to 2e".to_string(),
        ));
    }
    if !products[0][1].is_zero() {
        return Err(GriessError::ProductViolation(
            "e*a must vanish".to_string(),
        ));
    }
    if products[0][2] != c_vec.try_scale(&QFElement::ratio(1, 16))? {
        return Err(GriessError::ProductViolation(
            "e*c must equal (1/16)c".to_string(),
        ));
    }

    // Invariance forces the off-diagonal form values to vanish:
    // 2<a,e> = <a, e*e> = <e*a, e> = 0, (1/16)<c,e> = <e*c, e> = <c, e*e>
    // = 2<c,e>, and (1/16)<c,a> = <e*c, a> = <c, e*a> = 0. The two
    // remaining diagonal entries are linked by <c*c, a> = <c, a*c>.
    let rational = |value: &QFElement| -> Result<BigRational, GriessError> {
        value
            .as_rational()
            .cloned()
            .ok_or_else(|| {
                GriessError::ProductViolation("case coefficients must be rational".to_string())
            })
    };
    let cc_a = rational(products[2][2].coord(1))?;
    let ac_c = rational(products[1][2].coord(2))?;
    if cc_a.is_zero() {
        return Err(GriessError::FormViolation(
            "cannot normalize the form: c*c has no a component".to_string(),
        ));
    }
    // <a,a> = ratio * <c,c>.
    let ratio = ac_c / cc_a;

    // The norm of the second idempotent pins the scale: <f,f> = 1/4.
    let f_terms = file
        .decompositions
        .iter()
        .find(|(target, _)| *target == BasisLabel::F)
        .map(|(_, terms)| terms)
        .ok_or_else(|| parse_err(0, "the order-three case needs a decomposition of f"))?;
    let f = element_from_terms(&basis, f_terms)?;
    let fe = rational(f.coord(0))?;
    let fa = rational(f.coord(1))?;
    let fc = rational(f.coord(2))?;
    let quarter = rat(1, 4);
    let coeff = &fa * &fa * &ratio + &fc * &fc;
    if coeff.is_zero() {
        return Err(GriessError::FormViolation(
            "f does not constrain the form scale".to_string(),
        ));
    }
    let cc = (&quarter - &fe * &fe * &quarter) / coeff;
    let aa = &ratio * &cc;

    let gram = QFMatrix::from_rows(vec![
        vec![
            QFElement::ratio(1, 4),
            QFElement::zero(),
            QFElement::zero(),
        ],
        vec![
            QFElement::zero(),
            QFElement::from_big(aa),
            QFElement::zero(),
        ],
        vec![
            QFElement::zero(),
            QFElement::zero(),
            QFElement::from_big(cc),
        ],
    ])?;

    let mut table = CaseTable {
        class: PairClass::ThreeC,
        lambda1: file.lambda1.clone(),
        lambda2: file.lambda2.clone(),
        basis,
        products,
        gram,
        autos: BTreeMap::new(),
        embedded: BTreeMap::new(),
    };
    table.embedded.insert("f".to_string(), f.clone());

    let spectrum = adjoint_spectrum(PairClass::ThreeC);
    let tau_e = spectral_involution(&table, &e, &spectrum, "tau_e")?;
    let tau_f = spectral_involution(&table, &f, &spectrum, "tau_f")?;
    let sigma = tau_f.try_mul(&tau_e)?.try_mul(&tau_f)?;
    if sigma.mul_vec(e.coords())? != f.coords() {
        return Err(GriessError::AutomorphismMismatch {
            name: "sigma".to_string(),
            reason: "does not send e to f".to_string(),
        });
    }
    table.autos.insert("tau_e".to_string(), tau_e);
    table.autos.insert("tau_f".to_string(), tau_f);
    table.autos.insert("sigma".to_string(), sigma);
    Ok(table)
}

/// Basis positions of the five axes on their pentagon: the basis order
/// e, e_tf, e_tfte, f, f_te corresponds to positions 0, 2, 3, 1, 4.
const PENTAGON_OF_BASIS: [usize; 5] = [0, 2, 3, 1, 4];
const BASIS_OF_PENTAGON: [usize; 5] = [0, 3, 1, 2, 4];

/// Index permutations of the two generating involutions and their
/// alternating word on the six-element basis. `tau_e` reflects the pentagon
/// around position 0, `tau_f` around position 1, and `sigma` exchanges the
/// two generators; all three fix `alpha_ef`.
const TAU_E_PERM: [usize; 6] = [0, 2, 1, 4, 3, 5];
const TAU_F_PERM: [usize; 6] = [1, 0, 4, 3, 2, 5];
const SIGMA_PERM: [usize; 6] = [3, 4, 2, 0, 1, 5];

fn permute_element(value: &GriessElement, perm: &[usize; 6]) -> GriessElement {
    let mut coords = vec![QFElement::zero(); 6];
    for (k, coeff) in value.coords().iter().enumerate() {
        coords[perm[k]] = coeff.clone();
    }
    GriessElement::new(coords)
}

fn perm_matrix(perm: &[usize; 6]) -> QFMatrix {
    QFMatrix::from_fn(6, 6, |i, j| {
        if perm[j] == i {
            QFElement::one()
        } else {
            QFElement::zero()
        }
    })
    .expect("permutation matrices are well formed")
}

/// Pentagon distance between positions, either 1 (adjacent) or 2.
fn pentagon_distance(i: usize, j: usize) -> usize {
    let d = (i + 5 - j) % 5;
    d.min(5 - d)
}

/// Gram matrix of the seven-element spanning set, in the order x0..x4
/// (pentagon positions), alpha, alpha2, as closed forms in the case
/// invariants. The axis block records the pentagon distances; the values
/// against alpha and alpha2 come from expanding the axial inner rule, and
/// the last three entries additionally use the axial product rule together
/// with the equal-alpha symmetry of the orbit.
pub fn spanning_gram(l1: &BigRational, l2: &BigRational) -> Result<QFMatrix, GriessError> {
    let g1 = rat(31, 64) * l1 - rat(1, 64);
    let k1 = rat(31, 64) * l2 - rat(1, 64);
    let k = &g1 + (l2 - l1) / rat(64, 1);
    let a = rat(5, 16) * &g1 + rat(3, 4) * l1 * l1 - rat(25, 1024) * l1
        + rat(7, 2048) * (rat(1, 1) + l2);
    let b = rat(3, 8) * &k - rat(1, 16) * &k1 + rat(3, 4) * l1 * l2 - rat(25, 1024) * l1
        + rat(7, 2048) * (l1 + l2);
    let c = rat(3, 8) * &k - rat(1, 16) * &k1 + rat(3, 4) * l2 * l2 - rat(25, 1024) * l2
        + rat(7, 2048) * (rat(1, 1) + l1);

    let entry = |i: usize, j: usize| -> BigRational {
        let (i, j) = (i.min(j), i.max(j));
        match (i, j) {
            (i, j) if j < 5 && i == j => rat(1, 4),
            (i, j) if j < 5 => match pentagon_distance(i, j) {
                1 => l1 / rat(4, 1),
                _ => l2 / rat(4, 1),
            },
            (i, 5) if i < 5 => g1.clone(),
            (i, 6) if i < 5 => {
                // alpha2 belongs to the pair (x0, x2).
                if i == 0 || i == 2 {
                    k1.clone()
                } else {
                    k.clone()
                }
            }
            (5, 5) => a.clone(),
            (5, 6) => b.clone(),
            (6, 6) => c.clone(),
            _ => unreachable!("spanning set has seven elements"),
        }
    };
    Ok(QFMatrix::from_fn(7, 7, |i, j| {
        QFElement::from_big(entry(i, j))
    })?)
}

/// Builds the six-dimensional table in stages: the spanning relation from
/// the rank of the seven-element Gram matrix, product closure under the
/// dihedral symmetry, the square of alpha from its orbit expansion, and
/// finally the involutions from spectral projectors.
fn build_a5(file: &CaseFile) -> Result<CaseTable, GriessError> {
    expect_basis(
        file,
        &[
            BasisLabel::E,
            BasisLabel::ETf,
            BasisLabel::ETfTe,
            BasisLabel::F,
            BasisLabel::FTe,
            BasisLabel::AlphaEF,
        ],
    )?;
    let basis = file.basis.clone();
    let l1 = &file.lambda1;
    let l2 = file
        .lambda2
        .as_ref()
        .ok_or_else(|| parse_err(0, "the order-five case needs lambda2"))?;

    // Stage 1: the seven-element spanning set must have corank exactly 1;
    // its kernel vector is the relation expressing alpha2 over the basis.
    let gram7 = spanning_gram(l1, l2)?;
    let reduction = mat_reduce(&gram7);
    if reduction.rank != 6 || reduction.kernel.len() != 1 {
        return Err(GriessError::SpanningRelationMissing {
            rank: reduction.rank,
            nullity: reduction.kernel.len(),
        });
    }
    let kernel = &reduction.kernel[0];
    if kernel[6].is_zero() {
        return Err(GriessError::FormViolation(
            "the spanning relation does not involve the second alpha".to_string(),
        ));
    }
    let scale = -kernel[6].try_inv()?;
    let mut alpha2_coords = vec![QFElement::zero(); 6];
    for (p, coeff) in kernel.iter().take(5).enumerate() {
        alpha2_coords[BASIS_OF_PENTAGON[p]] = coeff.try_mul(&scale)?;
    }
    alpha2_coords[5] = kernel[5].try_mul(&scale)?;
    let alpha2 = GriessElement::new(alpha2_coords);

    // Stage 2: seed products. The file supplies the axis square, one
    // adjacent pair, and one alpha product; alpha2 is by definition the
    // alpha of the distance-two pair (e, e_tf), which yields its product.
    let mut products = products_from_file(file)?;
    let e = GriessElement::basis(6, 0);
    let e_tf = GriessElement::basis(6, 1);
    let distance_two = e
        .try_add(&e_tf)?
        .try_scale(&QFElement::ratio(1, 16))?
        .try_add(&alpha2)?;
    set_product(&mut products, &basis, 0, 1, distance_two)?;

    // Stage 3: close under the dihedral symmetry of the pentagon.
    close_under_symmetry(&mut products, &basis, &[TAU_E_PERM, TAU_F_PERM])?;

    // Stage 4: the square of alpha from its orbit expansion, a consequence
    // of applying the axial product rule twice to alpha(e,f).
    let alpha_of = |products: &PartialProducts, i: usize, j: usize| -> Result<GriessElement, GriessError> {
        let prod = products[i][j]
            .as_ref()
            .ok_or(GriessError::MissingProduct(basis[i], basis[j]))?;
        let shift = GriessElement::basis(6, i)
            .try_add(&GriessElement::basis(6, j))?
            .try_scale(&QFElement::ratio(1, 16))?;
        Ok(prod.try_sub(&shift)?)
    };
    let alpha_ef = GriessElement::basis(6, 5);
    if alpha_of(&products, 0, 3)? != alpha_ef {
        return Err(GriessError::ProductViolation(
            "alpha(e,f) is not the basis vector alpha_ef".to_string(),
        ));
    }
    let alpha_e_etf = alpha_of(&products, 0, 1)?;
    let alpha_f_fte = alpha_of(&products, 3, 4)?;
    if alpha_e_etf != alpha_f_fte {
        return Err(GriessError::ProductViolation(
            "distance-two alpha values disagree".to_string(),
        ));
    }
    let f = GriessElement::basis(6, 3);
    let f_te = GriessElement::basis(6, 4);
    let e_tfte = GriessElement::basis(6, 2);
    let c_e = rat(7, 3)
        * (rat(4, 1) * l1 * l1 - l1 / rat(16, 1) - rat(1, 4096) + l2 / rat(64, 1));
    let c_ff = rat(49, 96) * (l1 - rat(5, 256));
    let c_ee = rat(49, 24576);
    let c_alpha = rat(-1, 3) * (rat(5, 1) * l1 + rat(13, 128));
    let alpha_sq = e
        .scale_rat(&c_e)
        .try_add(&f.try_add(&f_te)?.scale_rat(&c_ff))?
        .try_add(&e_tf.try_add(&e_tfte)?.scale_rat(&c_ee))?
        .try_add(&alpha_ef.scale_rat(&c_alpha))?
        .try_add(&alpha_e_etf.scale_rat(&rat(-7, 384)))?
        .try_add(&alpha_f_fte.scale_rat(&rat(7, 512)))?;
    set_product(&mut products, &basis, 5, 5, alpha_sq)?;
    let products = complete_products(products, &basis)?;

    // Stage 5: the Gram matrix is the axis-and-alpha block of the spanning
    // Gram, reordered from pentagon order to basis order.
    let gram = QFMatrix::from_fn(6, 6, |i, j| {
        let pi = if i < 5 { PENTAGON_OF_BASIS[i] } else { 5 };
        let pj = if j < 5 { PENTAGON_OF_BASIS[j] } else { 5 };
        gram7.get(pi, pj).clone()
    })?;

    let mut table = CaseTable {
        class: PairClass::FiveA,
        lambda1: file.lambda1.clone(),
        lambda2: file.lambda2.clone(),
        basis,
        products,
        gram,
        autos: BTreeMap::new(),
        embedded: BTreeMap::new(),
    };

    // Stage 6: the involutions. Their spectral reflections must reproduce
    // the orbit permutations the closure ran on.
    let spectrum = adjoint_spectrum(PairClass::FiveA);
    let tau_e = spectral_involution(&table, &e, &spectrum, "tau_e")?;
    if tau_e != perm_matrix(&TAU_E_PERM) {
        return Err(GriessError::AutomorphismMismatch {
            name: "tau_e".to_string(),
            reason: "spectral reflection differs from the orbit permutation".to_string(),
        });
    }
    let tau_f = spectral_involution(&table, &f, &spectrum, "tau_f")?;
    if tau_f != perm_matrix(&TAU_F_PERM) {
        return Err(GriessError::AutomorphismMismatch {
            name: "tau_f".to_string(),
            reason: "spectral reflection differs from the orbit permutation".to_string(),
        });
    }
    let sigma = tau_f
        .try_mul(&tau_e)?
        .try_mul(&tau_f)?
        .try_mul(&tau_e)?
        .try_mul(&tau_f)?;
    if sigma != perm_matrix(&SIGMA_PERM) {
        return Err(GriessError::AutomorphismMismatch {
            name: "sigma".to_string(),
            reason: "alternating word differs from the exchange permutation".to_string(),
        });
    }
    table.autos.insert("tau_e".to_string(), tau_e);
    table.autos.insert("tau_f".to_string(), tau_f);
    table.autos.insert("sigma".to_string(), sigma);
    Ok(table)
}

fn close_under_symmetry(
    products: &mut PartialProducts,
    basis: &[BasisLabel],
    perms: &[[usize; 6]],
) -> Result<(), GriessError> {
    loop {
        let mut changed = false;
        for i in 0..6 {
            for j in 0..6 {
                let Some(value) = products[i][j].clone() else {
                    continue;
                };
                for perm in perms {
                    let (pi, pj) = (perm[i], perm[j]);
                    let moved = permute_element(&value, perm);
                    match &products[pi][pj] {
                        None => {
                            products[pi][pj] = Some(moved.clone());
                            products[pj][pi] = Some(moved);
                            changed = true;
                        }
                        Some(existing) => {
                            if existing != &moved {
                                return Err(GriessError::ClosureInconsistent(
                                    basis[pi], basis[pj],
                                ));
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

/// Adjoint eigenvalues present in a built case, used for the spectral
/// projector onto the 1/16 eigenspace.
fn adjoint_spectrum(class: PairClass) -> Vec<QFElement> {
    match class {
        PairClass::ThreeC => vec![
            QFElement::integer(2),
            QFElement::zero(),
            QFElement::ratio(1, 16),
        ],
        PairClass::FiveA => vec![
            QFElement::integer(2),
            QFElement::zero(),
            QFElement::ratio(1, 2),
            QFElement::ratio(1, 16),
        ],
        other => unreachable!("no adjoint spectrum recorded for class {other}"),
    }
}

/// Adjoint eigenvalue multiplicities of `ad_e` in a built case.
///
/// Panics for classes without a bundled table.
pub fn expected_adjoint_dimensions(class: PairClass) -> Vec<(QFElement, usize)> {
    match class {
        PairClass::ThreeC => vec![
            (QFElement::integer(2), 1),
            (QFElement::zero(), 1),
            (QFElement::ratio(1, 2), 0),
            (QFElement::ratio(1, 16), 1),
        ],
        PairClass::FiveA => vec![
            (QFElement::integer(2), 1),
            (QFElement::zero(), 2),
            (QFElement::ratio(1, 2), 1),
            (QFElement::ratio(1, 16), 2),
        ],
        other => unreachable!("no adjoint dimensions recorded for class {other}"),
    }
}

/// The reflection `I - 2P` where `P` projects onto the 1/16 eigenspace of
/// `ad_x`. The projector identities double as a certificate that `ad_x` is
/// diagonalizable with the given spectrum.
fn spectral_involution(
    table: &CaseTable,
    x: &GriessElement,
    spectrum: &[QFElement],
    name: &str,
) -> Result<QFMatrix, GriessError> {
    let mismatch = |reason: &str| GriessError::AutomorphismMismatch {
        name: name.to_string(),
        reason: reason.to_string(),
    };
    let ad = adjoint_matrix(table, x)?;
    let n = table.dim();
    let target = QFElement::ratio(1, 16);
    let mut proj = QFMatrix::identity(n);
    for value in spectrum {
        if *value == target {
            continue;
        }
        let mut shifted = ad.clone();
        for i in 0..n {
            let entry = shifted.get(i, i).try_sub(value)?;
            shifted.set(i, i, entry);
        }
        let denom = target.try_sub(value)?;
        proj = proj.try_mul(&shifted.try_scale(&denom.try_inv()?)?)?;
    }
    if proj.try_mul(&proj)? != proj {
        return Err(mismatch("projector is not idempotent"));
    }
    if ad.try_mul(&proj)? != proj.try_scale(&target)? {
        return Err(mismatch("projector does not isolate the 1/16 eigenspace"));
    }
    let tau = QFMatrix::identity(n).try_sub(&proj.try_scale(&QFElement::integer(2))?)?;
    if tau.try_mul(&tau)? != QFMatrix::identity(n) {
        return Err(mismatch("reflection is not an involution"));
    }
    Ok(tau)
}

/// Runs every verification a finished table must pass: symmetry of the
/// data, invariance of the form, axis normalization, automorphism checks,
/// the axial rules, the exchange identity, positive definiteness, and the
/// adjoint spectrum.
pub fn verify_case_table(table: &CaseTable) -> Result<(), GriessError> {
    verify_symmetry(table)?;
    verify_form_invariance(table)?;
    verify_axes(table)?;
    verify_automorphisms(table)?;
    verify_axial_rules(table)?;
    let residual = exchange_residual(table)?;
    if !residual.is_zero() {
        return Err(GriessError::ProductViolation(
            "exchange identity residual is nonzero".to_string(),
        ));
    }
    verify_positive_definite(table)?;
    verify_adjoint_spectrum(table)?;
    Ok(())
}

fn verify_symmetry(table: &CaseTable) -> Result<(), GriessError> {
    let n = table.dim();
    for i in 0..n {
        for j in 0..i {
            if table.product(i, j) != table.product(j, i) {
                return Err(GriessError::ProductViolation(format!(
                    "product table is not symmetric at ({}, {})",
                    table.basis()[i],
                    table.basis()[j]
                )));
            }
        }
    }
    if !table.gram().is_symmetric() {
        return Err(GriessError::FormViolation(
            "Gram matrix is not symmetric".to_string(),
        ));
    }
    Ok(())
}

fn verify_form_invariance(table: &CaseTable) -> Result<(), GriessError> {
    let n = table.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let bj = GriessElement::basis(n, j);
                let bk = GriessElement::basis(n, k);
                let lhs = inner(table, table.product(i, j), &bk)?;
                let rhs = inner(table, &bj, table.product(i, k))?;
                if lhs != rhs {
                    return Err(GriessError::FormViolation(format!(
                        "<{bi}*{bj}, {bk}> differs from <{bj}, {bi}*{bk}>",
                        bi = table.basis()[i],
                        bj = table.basis()[j],
                        bk = table.basis()[k]
                    )));
                }
            }
        }
    }
    Ok(())
}

fn verify_axes(table: &CaseTable) -> Result<(), GriessError> {
    for (name, x) in table.axes() {
        let square = multiply(table, &x, &x)?;
        if square != x.try_scale(&QFElement::integer(2))? {
            return Err(GriessError::ProductViolation(format!(
                "axis {name} does not square to twice itself"
            )));
        }
        if inner(table, &x, &x)? != QFElement::ratio(1, 4) {
            return Err(GriessError::FormViolation(format!(
                "axis {name} does not have norm 1/4"
            )));
        }
    }
    let missing = |name: &str| GriessError::ProductViolation(format!("case lacks the axis {name}"));
    let e = table.axis("e").ok_or_else(|| missing("e"))?;
    let f = table.axis("f").ok_or_else(|| missing("f"))?;
    let quarter_l1 = QFElement::from_big(table.lambda1().clone() * rat(1, 4));
    if inner(table, &e, &f)? != quarter_l1 {
        return Err(GriessError::FormViolation(
            "<e,f> differs from lambda1/4".to_string(),
        ));
    }
    if let Some(l2) = table.lambda2() {
        let e_tf = automorphism_apply(table, "tau_f", &e)?;
        let e_tfte = automorphism_apply(table, "tau_e", &e_tf)?;
        let quarter_l2 = QFElement::from_big(l2.clone() * rat(1, 4));
        if inner(table, &e, &e_tfte)? != quarter_l2 {
            return Err(GriessError::FormViolation(
                "<e, e^(tau_f tau_e)> differs from lambda2/4".to_string(),
            ));
        }
    }
    Ok(())
}

fn verify_automorphisms(table: &CaseTable) -> Result<(), GriessError> {
    let n = table.dim();
    let identity = QFMatrix::identity(n);
    for name in table.automorphism_names() {
        let m = table.automorphism(&name)?;
        let mismatch = |reason: &str| GriessError::AutomorphismMismatch {
            name: name.clone(),
            reason: reason.to_string(),
        };
        if m.try_mul(m)? != identity {
            return Err(mismatch("not an involution"));
        }
        if m.transpose().try_mul(table.gram())?.try_mul(m)? != *table.gram() {
            return Err(mismatch("does not preserve the form"));
        }
        for i in 0..n {
            for j in 0..n {
                let bi = automorphism_apply(table, &name, &GriessElement::basis(n, i))?;
                let bj = automorphism_apply(table, &name, &GriessElement::basis(n, j))?;
                let lhs = multiply(table, &bi, &bj)?;
                let rhs = GriessElement::new(m.mul_vec(table.product(i, j).coords())?);
                if lhs != rhs {
                    return Err(mismatch("does not preserve the product"));
                }
            }
        }
    }
    let missing = |name: &str| GriessError::ProductViolation(format!("case lacks the axis {name}"));
    let e = table.axis("e").ok_or_else(|| missing("e"))?;
    let f = table.axis("f").ok_or_else(|| missing("f"))?;
    let fixed = [("tau_e", &e), ("tau_f", &f)];
    for (name, x) in fixed {
        if automorphism_apply(table, name, x)? != *x {
            return Err(GriessError::AutomorphismMismatch {
                name: name.to_string(),
                reason: "does not fix its own axis".to_string(),
            });
        }
    }
    if automorphism_apply(table, "sigma", &e)? != f || automorphism_apply(table, "sigma", &f)? != e
    {
        return Err(GriessError::AutomorphismMismatch {
            name: "sigma".to_string(),
            reason: "does not exchange e and f".to_string(),
        });
    }
    Ok(())
}

fn verify_axial_rules(table: &CaseTable) -> Result<(), GriessError> {
    let missing = |name: &str| GriessError::ProductViolation(format!("case lacks the axis {name}"));
    let e = table.axis("e").ok_or_else(|| missing("e"))?;
    let f = table.axis("f").ok_or_else(|| missing("f"))?;
    let generators = [("e", &e, "tau_e"), ("f", &f, "tau_f")];
    for (a_name, a, tau) in generators {
        for (x_name, x) in table.axes() {
            if !axial_product_residual(table, a, &x, tau)?.is_zero() {
                return Err(GriessError::ProductViolation(format!(
                    "axial product rule fails for ({a_name}, {x_name})"
                )));
            }
            if !axial_inner_residual(table, a, &x)?.is_zero() {
                return Err(GriessError::FormViolation(format!(
                    "axial inner rule fails for ({a_name}, {x_name})"
                )));
            }
        }
    }
    Ok(())
}

fn verify_positive_definite(table: &CaseTable) -> Result<(), GriessError> {
    let n = table.dim();
    for k in 1..=n {
        let minor = QFMatrix::from_fn(k, k, |i, j| table.gram().get(i, j).clone())?;
        let det = mat_reduce(&minor)
            .det
            .expect("leading minors are square");
        if det.signum() <= 0 {
            return Err(GriessError::FormViolation(format!(
                "leading minor {k} of the Gram matrix is not positive"
            )));
        }
    }
    Ok(())
}

fn verify_adjoint_spectrum(table: &CaseTable) -> Result<(), GriessError> {
    let missing = |name: &str| GriessError::ProductViolation(format!("case lacks the axis {name}"));
    let e = table.axis("e").ok_or_else(|| missing("e"))?;
    let mut total = 0;
    for (value, dim) in expected_adjoint_dimensions(table.class()) {
        let space = eigenspace(table, &e, &value)?;
        if space.len() != dim {
            return Err(GriessError::ProductViolation(format!(
                "adjoint eigenvalue {value} has multiplicity {}, expected {dim}",
                space.len()
            )));
        }
        total += dim;
    }
    if total != table.dim() {
        return Err(GriessError::ProductViolation(
            "adjoint eigenvalue multiplicities do not fill the space".to_string(),
        ));
    }
    Ok(())
}
