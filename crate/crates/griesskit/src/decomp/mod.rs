//! Decomposition templates for the two fully built cases.
//!
//! A template lists the candidate irreducible modules of the subalgebra
//! attached to an idempotent pair: each summand carries a multiplicity
//! variable, the conformal weights of its factors, the matching Kac
//! labels, and the eigenvalue sector of the distinguished axis its first
//! factor lives in.  The template also records the two involution splits
//! whose quantum-dimension balance generates the equations solved in
//! [`solve`](crate::decomp::solve), and [`verify`](crate::decomp::verify)
//! runs the whole pipeline from the built case table to the solved
//! multiplicities.

pub mod solve;
pub mod verify;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::exactnum::{ExactError, QFElement};
use crate::griess::definition::PairClass;
use crate::griess::GriessError;
use crate::minimal::qdim::qdim_product;
use crate::minimal::{identify_model, kac_lookup, KacLabel, MinimalError, MinimalModel};

/// Errors from template construction and multiplicity solving.
#[derive(Debug, Error)]
pub enum DecompError {
    #[error("template error: {0}")]
    Template(String),
    #[error("solver error: {0}")]
    Solve(String),
    #[error(transparent)]
    Griess(#[from] GriessError),
    #[error(transparent)]
    Minimal(#[from] MinimalError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The axis eigenvalue sector a summand's first factor lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    Zero,
    Half,
    Sixteenth,
}

impl Sector {
    pub fn name(&self) -> &'static str {
        match self {
            Sector::Zero => "0",
            Sector::Half => "1/2",
            Sector::Sixteenth => "1/16",
        }
    }
}

impl std::fmt::Display for Sector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One candidate module in a decomposition, with its multiplicity variable.
#[derive(Debug, Clone)]
pub struct ModuleSummand {
    /// Position in the template, zero-based.
    pub index: usize,
    /// Variable name, `n1` upward in template order.
    pub var: String,
    /// Conformal weight of each tensor factor.
    pub weights: Vec<BigRational>,
    /// Canonical Kac label of each tensor factor.
    pub labels: Vec<KacLabel>,
    /// Sector of the first factor's weight.
    pub sector: Sector,
    /// Multiplicity fixed by the template; `Some(1)` exactly for the vacuum.
    pub fixed: Option<u64>,
}

impl ModuleSummand {
    /// Renders the weight list, e.g. `[1/16, 31/16]`.
    pub fn display_weights(&self) -> String {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// One involution split: the quantum dimensions of the summands on the two
/// sides balance exactly.
#[derive(Debug, Clone)]
pub struct SectorSplit {
    pub name: String,
    /// Summand indices fixed by the involution.
    pub left: Vec<usize>,
    /// Summand indices negated by the involution.
    pub right: Vec<usize>,
}

/// The full candidate decomposition for one pair class.
#[derive(Debug, Clone)]
pub struct DecompTemplate {
    pub case: PairClass,
    /// Central charges of the tensor factors.
    pub charges: Vec<BigRational>,
    /// Minimal models identified from the charges.
    pub models: Vec<MinimalModel>,
    pub summands: Vec<ModuleSummand>,
    pub splits: Vec<SectorSplit>,
}

impl DecompTemplate {
    /// The exact quantum dimension of one summand, the product over factors.
    pub fn summand_qdim(&self, index: usize) -> Result<QFElement, DecompError> {
        let value = qdim_product(&self.models, &self.summands[index].labels)?;
        Ok(value.require_exact()?.clone())
    }

    /// Finds the summand carrying exactly these factor labels.
    pub fn label_index(&self, labels: &[KacLabel]) -> Option<usize> {
        self.summands.iter().position(|s| s.labels == labels)
    }

    /// Finds the summand carrying exactly these factor weights.
    pub fn weight_index(&self, weights: &[BigRational]) -> Option<usize> {
        self.summands.iter().position(|s| s.weights == weights)
    }

    /// The index of the vacuum summand.
    pub fn vacuum_index(&self) -> usize {
        self.summands
            .iter()
            .position(|s| s.fixed.is_some())
            .expect("templates fix the vacuum")
    }
}

fn sector_of(weight: &BigRational) -> Result<Sector, DecompError> {
    let half = BigRational::new(1.into(), 2.into());
    let sixteenth = BigRational::new(1.into(), 16.into());
    if weight.is_zero() {
        Ok(Sector::Zero)
    } else if *weight == half {
        Ok(Sector::Half)
    } else if *weight == sixteenth {
        Ok(Sector::Sixteenth)
    } else {
        Err(DecompError::Template(format!(
            "first-factor weight {weight} is not an axis eigenvalue"
        )))
    }
}

fn build_template(
    case: PairClass,
    charges: Vec<BigRational>,
    weight_rows: Vec<Vec<BigRational>>,
    splits: Vec<SectorSplit>,
) -> Result<DecompTemplate, DecompError> {
    let models: Vec<MinimalModel> = charges
        .iter()
        .map(identify_model)
        .collect::<Result<_, _>>()?;
    let mut summands = Vec::with_capacity(weight_rows.len());
    for (index, weights) in weight_rows.into_iter().enumerate() {
        if weights.len() != models.len() {
            return Err(DecompError::Template(format!(
                "summand {} has {} weights for {} factors",
                index + 1,
                weights.len(),
                models.len()
            )));
        }
        let labels: Vec<KacLabel> = models
            .iter()
            .zip(&weights)
            .map(|(model, h)| kac_lookup(model, h))
            .collect::<Result<_, _>>()?;
        let sector = sector_of(&weights[0])?;
        let vacuum = weights.iter().all(|w| w.is_zero());
        summands.push(ModuleSummand {
            index,
            var: format!("n{}", index + 1),
            weights,
            labels,
            sector,
            fixed: vacuum.then_some(1),
        });
    }
    let fixed = summands.iter().filter(|s| s.fixed.is_some()).count();
    if fixed != 1 {
        return Err(DecompError::Template(format!(
            "expected exactly one vacuum summand, found {fixed}"
        )));
    }
    Ok(DecompTemplate {
        case,
        charges,
        models,
        summands,
        splits,
    })
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// The candidate decomposition of the order-three case: two factors of
/// central charge 1/2 and 21/22, six summands.
pub fn c3_template() -> Result<DecompTemplate, DecompError> {
    let weight_rows = vec![
        vec![rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(8, 1)],
        vec![rat(1, 2), rat(7, 2)],
        vec![rat(1, 2), rat(45, 2)],
        vec![rat(1, 16), rat(31, 16)],
        vec![rat(1, 16), rat(175, 16)],
    ];
    let splits = vec![
        SectorSplit {
            name: "half-sector balance".to_string(),
            left: vec![0, 1],
            right: vec![2, 3],
        },
        SectorSplit {
            name: "sixteenth-sector balance".to_string(),
            left: vec![0, 1, 2, 3],
            right: vec![4, 5],
        },
    ];
    build_template(
        PairClass::ThreeC,
        vec![rat(1, 2), rat(21, 22)],
        weight_rows,
        splits,
    )
}

/// The candidate decomposition of the order-five case: three factors of
/// central charge 1/2, 25/28, 25/28, twelve summands.
pub fn a5_template() -> Result<DecompTemplate, DecompError> {
    let weight_rows = vec![
        vec![rat(0, 1), rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(15, 2), rat(15, 2)],
        vec![rat(0, 1), rat(3, 4), rat(13, 4)],
        vec![rat(0, 1), rat(13, 4), rat(3, 4)],
        vec![rat(1, 2), rat(0, 1), rat(15, 2)],
        vec![rat(1, 2), rat(15, 2), rat(0, 1)],
        vec![rat(1, 2), rat(3, 4), rat(3, 4)],
        vec![rat(1, 2), rat(13, 4), rat(13, 4)],
        vec![rat(1, 16), rat(5, 32), rat(57, 32)],
        vec![rat(1, 16), rat(57, 32), rat(5, 32)],
        vec![rat(1, 16), rat(57, 32), rat(165, 32)],
        vec![rat(1, 16), rat(165, 32), rat(57, 32)],
    ];
    let splits = vec![
        SectorSplit {
            name: "half-sector balance".to_string(),
            left: vec![0, 1, 2, 3],
            right: vec![4, 5, 6, 7],
        },
        SectorSplit {
            name: "sixteenth-sector balance".to_string(),
            left: vec![0, 1, 2, 3, 4, 5, 6, 7],
            right: vec![8, 9, 10, 11],
        },
    ];
    build_template(
        PairClass::FiveA,
        vec![rat(1, 2), rat(25, 28), rat(25, 28)],
        weight_rows,
        splits,
    )
}

/// The template for a built case class.
pub fn template_for(case: PairClass) -> Result<DecompTemplate, DecompError> {
    match case {
        PairClass::ThreeC => c3_template(),
        PairClass::FiveA => a5_template(),
        other => Err(DecompError::Template(format!(
            "no decomposition template for class {other}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf(n: i64, d: i64) -> QFElement {
        QFElement::ratio(n, d)
    }

    fn quad(a: i64, b: i64, d: u64) -> QFElement {
        QFElement::quadratic(rat(a, 1), rat(b, 1), d).unwrap()
    }

    #[test]
    fn the_order_three_template() {
        let tpl = c3_template().unwrap();
        assert_eq!(tpl.summands.len(), 6);
        assert_eq!(tpl.models[0].p(), 3);
        assert_eq!(tpl.models[0].q(), 4);
        assert_eq!(tpl.models[1].p(), 11);
        assert_eq!(tpl.models[1].q(), 12);

        assert_eq!(tpl.vacuum_index(), 0);
        assert_eq!(tpl.summands[0].fixed, Some(1));
        assert_eq!(tpl.summands[1].labels[1], KacLabel { r: 10, s: 5 });
        assert_eq!(tpl.summands[3].labels[1], KacLabel { r: 10, s: 1 });
        assert_eq!(tpl.summands[4].labels[0], KacLabel { r: 2, s: 2 });
        assert_eq!(tpl.summands[4].labels[1], KacLabel { r: 10, s: 8 });

        let sectors: Vec<Sector> = tpl.summands.iter().map(|s| s.sector).collect();
        assert_eq!(
            sectors,
            vec![
                Sector::Zero,
                Sector::Zero,
                Sector::Half,
                Sector::Half,
                Sector::Sixteenth,
                Sector::Sixteenth,
            ]
        );

        let qdims: Vec<QFElement> = (0..6).map(|i| tpl.summand_qdim(i).unwrap()).collect();
        assert_eq!(
            qdims,
            vec![
                qf(1, 1),
                quad(2, 1, 3),
                quad(2, 1, 3),
                qf(1, 1),
                quad(3, 1, 3),
                quad(3, 1, 3),
            ]
        );
        assert_eq!(tpl.summands[4].display_weights(), "[1/16, 31/16]");
    }

    #[test]
    fn the_order_five_template() {
        let tpl = a5_template().unwrap();
        assert_eq!(tpl.summands.len(), 12);
        assert_eq!(tpl.models[1].p(), 7);
        assert_eq!(tpl.models[1].q(), 8);
        assert_eq!(tpl.models[1], tpl.models[2]);

        assert_eq!(
            tpl.summands[8].labels,
            vec![
                KacLabel { r: 2, s: 2 },
                KacLabel { r: 6, s: 6 },
                KacLabel { r: 6, s: 4 },
            ]
        );
        assert_eq!(tpl.summands[1].labels[1], KacLabel { r: 6, s: 1 });

        let qdims: Vec<QFElement> = (0..12).map(|i| tpl.summand_qdim(i).unwrap()).collect();
        let one = qf(1, 1);
        let body = quad(3, 2, 2);
        let tail = quad(4, 2, 2);
        assert_eq!(
            qdims,
            vec![
                one.clone(),
                one.clone(),
                body.clone(),
                body.clone(),
                one.clone(),
                one,
                body.clone(),
                body,
                tail.clone(),
                tail.clone(),
                tail.clone(),
                tail,
            ]
        );

        // Both splits partition the summands they mention by sector.
        assert_eq!(tpl.splits[0].left, vec![0, 1, 2, 3]);
        assert_eq!(tpl.splits[1].right, vec![8, 9, 10, 11]);
    }

    #[test]
    fn template_lookup_by_labels_and_weights() {
        let tpl = c3_template().unwrap();
        let labels = tpl.summands[4].labels.clone();
        assert_eq!(tpl.label_index(&labels), Some(4));
        assert_eq!(tpl.weight_index(&[rat(1, 2), rat(45, 2)]), Some(3));
        assert_eq!(tpl.weight_index(&[rat(1, 2), rat(1, 2)]), None);
    }

    #[test]
    fn off_spectrum_weights_are_rejected() {
        assert!(sector_of(&rat(0, 1)).is_ok());
        assert!(matches!(
            sector_of(&rat(3, 4)),
            Err(DecompError::Template(_))
        ));
    }

    #[test]
    fn unsupported_classes_have_no_template() {
        assert!(matches!(
            template_for(PairClass::TwoA),
            Err(DecompError::Template(_))
        ));
    }
}
