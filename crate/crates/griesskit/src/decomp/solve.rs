//! Integer multiplicity systems and their exhaustive solver.
//!
//! The balance of quantum dimensions across each involution split gives
//! linear equations whose coefficients live in one real quadratic field.
//! Splitting every coefficient into its rational and radical parts turns
//! each of them into two integer equations, which an interval-propagating
//! exhaustive search solves over finite per-variable bounds.  Fusion with
//! a multiplicity-one simple current permutes the summands, so it also
//! transfers multiplicities; those conditional rules participate in
//! propagation and every candidate solution is re-verified against the
//! original field equations before being reported.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::exactnum::QFElement;
use crate::minimal::fusion::fuse_tensor;

use super::{DecompError, DecompTemplate};

/// Default inclusive upper bound for a multiplicity variable.
pub const DEFAULT_BOUND: u64 = 16;

/// One balance equation with quadratic-field coefficients: the dot product
/// of `lhs` with the multiplicities equals that of `rhs`.
#[derive(Debug, Clone)]
pub struct QfEquation {
    pub name: String,
    pub lhs: Vec<QFElement>,
    pub rhs: Vec<QFElement>,
}

/// An integer equation `sum(coeffs[i] * n[i]) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerEquation {
    pub name: String,
    pub coeffs: Vec<i64>,
}

/// If `n[current] = 1` then `n[to] = n[from]`: fusing the simple-current
/// summand `current` into the list permutes it, carrying multiplicities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransferRule {
    pub current: usize,
    pub from: usize,
    pub to: usize,
}

/// If `n[current] = 1` then `n[target] = 0`: fusing the simple-current
/// summand `current` with `target` lands outside the candidate list, so
/// `target` cannot appear.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VanishRule {
    pub current: usize,
    pub target: usize,
}

/// A finite integer search problem over the multiplicity variables.
#[derive(Debug, Clone)]
pub struct MultiplicitySystem {
    pub vars: Vec<String>,
    pub equations: Vec<QfEquation>,
    /// Inclusive per-variable ranges.
    pub bounds: Vec<(u64, u64)>,
    pub transfers: Vec<TransferRule>,
    pub vanishes: Vec<VanishRule>,
}

impl MultiplicitySystem {
    /// Pins one variable to a single value, by name.
    pub fn force(&mut self, var: &str, value: u64) -> Result<(), DecompError> {
        let idx = self
            .vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| DecompError::Solve(format!("unknown variable {var}")))?;
        self.bounds[idx] = (value, value);
        Ok(())
    }
}

/// Builds the balance equations of a template's splits.
///
/// Every summand's exact quantum dimension must be identified; variables
/// default to the range `0..=bound` except those the template fixes.
pub fn balance_system(
    template: &DecompTemplate,
    bound: u64,
) -> Result<MultiplicitySystem, DecompError> {
    let n = template.summands.len();
    let qdims: Vec<QFElement> = (0..n)
        .map(|i| template.summand_qdim(i))
        .collect::<Result<_, _>>()?;

    let mut equations = Vec::with_capacity(template.splits.len());
    for split in &template.splits {
        let mut lhs = vec![QFElement::zero(); n];
        let mut rhs = vec![QFElement::zero(); n];
        for &i in &split.left {
            lhs[i] = qdims[i].clone();
        }
        for &j in &split.right {
            rhs[j] = qdims[j].clone();
        }
        equations.push(QfEquation {
            name: split.name.clone(),
            lhs,
            rhs,
        });
    }

    let bounds = template
        .summands
        .iter()
        .map(|s| match s.fixed {
            Some(v) => (v, v),
            None => (0, bound),
        })
        .collect();

    Ok(MultiplicitySystem {
        vars: template.summands.iter().map(|s| s.var.clone()).collect(),
        equations,
        bounds,
        transfers: Vec::new(),
        vanishes: Vec::new(),
    })
}

/// Clears denominators of a rational coefficient vector into `i64`s.
fn integer_coeffs(parts: &[BigRational], name: &str) -> Result<Vec<i64>, DecompError> {
    let mut lcm = num_bigint::BigInt::from(1);
    for p in parts {
        lcm = lcm.lcm(p.denom());
    }
    let scale = BigRational::from_integer(lcm);
    parts
        .iter()
        .map(|p| {
            (p * &scale).to_integer().to_i64().ok_or_else(|| {
            DecompError::Solve(format!("coefficient overflow in equation {name}"))
            })
        })
        .collect()
}

/// Splits one field equation into its rational-part and radical-part
/// integer equations.
///
/// The two parts of an equality over one quadratic field must balance
/// independently, because 1 and the square root are linearly independent
/// over the rationals; a purely rational equation yields a trivial second
/// equation.
pub fn split_equation(
    eq: &QfEquation,
) -> Result<(IntegerEquation, IntegerEquation), DecompError> {
    let mut rational = Vec::with_capacity(eq.lhs.len());
    let mut radical = Vec::with_capacity(eq.lhs.len());
    for (l, r) in eq.lhs.iter().zip(&eq.rhs) {
        let net = l.try_sub(r)?;
        let (rat_part, rad_part) = net.parts();
        rational.push(rat_part);
        radical.push(rad_part);
    }
    Ok((
        IntegerEquation {
            name: format!("{} (rational part)", eq.name),
            coeffs: integer_coeffs(&rational, &eq.name)?,
        },
        IntegerEquation {
            name: format!("{} (radical part)", eq.name),
            coeffs: integer_coeffs(&radical, &eq.name)?,
        },
    ))
}

/// Bounds simple-current summands by `{0, 1}` and enumerates the transfer
/// and vanish rules their fusion induces.
///
/// A summand is a simple current when its quantum dimension is exactly 1;
/// its fusion with any summand is then a single module.  Landing on a
/// listed summand gives a transfer rule, landing outside gives a vanish
/// rule.  The multiplicity-transfer step is an imported assumption of the
/// decomposition argument, not re-proved here.
pub fn apply_simple_current_bounds(
    template: &DecompTemplate,
    mut system: MultiplicitySystem,
) -> Result<MultiplicitySystem, DecompError> {
    let one = QFElement::one();
    for summand in &template.summands {
        if template.summand_qdim(summand.index)? != one {
            continue;
        }
        let (lo, hi) = system.bounds[summand.index];
        system.bounds[summand.index] = (lo, hi.min(1));
        for other in &template.summands {
            let image = fuse_tensor(&template.models, &summand.labels, &other.labels)?;
            let [target] = image.as_slice() else {
                return Err(DecompError::Template(format!(
                    "fusion with simple current {} is not a permutation",
                    summand.var
                )));
            };
            match template.label_index(target) {
                Some(to) => system.transfers.push(TransferRule {
                    current: summand.index,
                    from: other.index,
                    to,
                }),
                None => system.vanishes.push(VanishRule {
                    current: summand.index,
                    target: other.index,
                }),
            }
        }
    }
    Ok(system)
}

type Domains = Vec<(i64, i64)>;

/// Narrows every domain against the equations and conditional rules until
/// a fixpoint; `false` means some domain emptied.
fn propagate(
    domains: &mut Domains,
    equations: &[IntegerEquation],
    transfers: &[TransferRule],
    vanishes: &[VanishRule],
) -> bool {
    loop {
        let mut changed = false;
        for eq in equations {
            for j in 0..domains.len() {
                let cj = eq.coeffs[j];
                if cj == 0 {
                    continue;
                }
                let mut others_lo = 0i64;
                let mut others_hi = 0i64;
                for (i, &(lo, hi)) in domains.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let c = eq.coeffs[i];
                    if c >= 0 {
                        others_lo += c * lo;
                        others_hi += c * hi;
                    } else {
                        others_lo += c * hi;
                        others_hi += c * lo;
                    }
                }
                // cj * nj = -others, so nj ranges over the interval
                // [-others_hi, -others_lo] divided by cj.
                let (mut lo, mut hi) = if cj > 0 {
                    (
                        Integer::div_ceil(&-others_hi, &cj),
                        Integer::div_floor(&-others_lo, &cj),
                    )
                } else {
                    (
                        Integer::div_ceil(&-others_lo, &cj),
                        Integer::div_floor(&-others_hi, &cj),
                    )
                };
                let (cur_lo, cur_hi) = domains[j];
                lo = lo.max(cur_lo);
                hi = hi.min(cur_hi);
                if lo > hi {
                    return false;
                }
                if (lo, hi) != (cur_lo, cur_hi) {
                    domains[j] = (lo, hi);
                    changed = true;
                }
            }
        }
        for rule in transfers {
            if domains[rule.current] != (1, 1) || rule.from == rule.to {
                continue;
            }
            let (a_lo, a_hi) = domains[rule.from];
            let (b_lo, b_hi) = domains[rule.to];
            let meet = (a_lo.max(b_lo), a_hi.min(b_hi));
            if meet.0 > meet.1 {
                return false;
            }
            if domains[rule.from] != meet || domains[rule.to] != meet {
                domains[rule.from] = meet;
                domains[rule.to] = meet;
                changed = true;
            }
        }
        for rule in vanishes {
            if domains[rule.current] != (1, 1) {
                continue;
            }
            let (lo, hi) = domains[rule.target];
            if lo > 0 {
                return false;
            }
            if hi != 0 {
                domains[rule.target] = (0, 0);
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Exact re-check of a candidate assignment against the field equations
/// and the conditional rules.
fn verify_assignment(
    system: &MultiplicitySystem,
    assignment: &[u64],
) -> Result<bool, DecompError> {
    let scaled_sum = |coeffs: &[QFElement]| -> Result<QFElement, DecompError> {
        let mut acc = QFElement::zero();
        for (c, &n) in coeffs.iter().zip(assignment) {
            let n = i64::try_from(n)
                .map_err(|_| DecompError::Solve("multiplicity overflow".to_string()))?;
            acc = acc.try_add(&c.try_mul(&QFElement::integer(n))?)?;
        }
        Ok(acc)
    };
    for eq in &system.equations {
        if scaled_sum(&eq.lhs)? != scaled_sum(&eq.rhs)? {
            return Ok(false);
        }
    }
    for rule in &system.transfers {
        if assignment[rule.current] == 1 && assignment[rule.from] != assignment[rule.to] {
            return Ok(false);
        }
    }
    for rule in &system.vanishes {
        if assignment[rule.current] == 1 && assignment[rule.target] != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All assignments satisfying the system, in ascending lexicographic
/// order.  An empty list means the system is inconsistent.
pub fn solve(system: &MultiplicitySystem) -> Result<Vec<Vec<u64>>, DecompError> {
    let mut int_equations = Vec::with_capacity(2 * system.equations.len());
    for eq in &system.equations {
        let (rational, radical) = split_equation(eq)?;
        int_equations.push(rational);
        int_equations.push(radical);
    }
    let mut domains: Domains = Vec::with_capacity(system.bounds.len());
    for &(lo, hi) in &system.bounds {
        let lo = i64::try_from(lo)
            .map_err(|_| DecompError::Solve("bound overflow".to_string()))?;
        let hi = i64::try_from(hi)
            .map_err(|_| DecompError::Solve("bound overflow".to_string()))?;
        domains.push((lo, hi));
    }

    let mut solutions = Vec::new();
    search(
        system,
        &int_equations,
        domains,
        &mut solutions,
    )?;
    solutions.sort();
    Ok(solutions)
}

fn search(
    system: &MultiplicitySystem,
    equations: &[IntegerEquation],
    mut domains: Domains,
    solutions: &mut Vec<Vec<u64>>,
) -> Result<(), DecompError> {
    if !propagate(
        &mut domains,
        equations,
        &system.transfers,
        &system.vanishes,
    ) {
        return Ok(());
    }
    match domains.iter().position(|&(lo, hi)| lo < hi) {
        None => {
            let assignment: Vec<u64> = domains.iter().map(|&(lo, _)| lo as u64).collect();
            if verify_assignment(system, &assignment)? {
                solutions.push(assignment);
            }
            Ok(())
        }
        Some(j) => {
            let (lo, hi) = domains[j];
            for value in lo..=hi {
                let mut branch = domains.clone();
                branch[j] = (value, value);
                search(system, equations, branch, solutions)?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{a5_template, c3_template};
    use super::*;

    #[test]
    fn the_order_three_equations_split_as_expected() {
        let tpl = c3_template().unwrap();
        let system = balance_system(&tpl, DEFAULT_BOUND).unwrap();
        assert_eq!(system.equations.len(), 2);

        let (rational, radical) = split_equation(&system.equations[0]).unwrap();
        assert_eq!(rational.coeffs, vec![1, 2, -2, -1, 0, 0]);
        assert_eq!(radical.coeffs, vec![0, 1, -1, 0, 0, 0]);

        let (rational, radical) = split_equation(&system.equations[1]).unwrap();
        assert_eq!(rational.coeffs, vec![1, 2, 2, 1, -3, -3]);
        assert_eq!(radical.coeffs, vec![0, 1, 1, 0, -1, -1]);
    }

    #[test]
    fn the_order_five_equations_split_as_expected() {
        let tpl = a5_template().unwrap();
        let system = balance_system(&tpl, DEFAULT_BOUND).unwrap();

        let (rational, radical) = split_equation(&system.equations[0]).unwrap();
        assert_eq!(rational.coeffs, vec![1, 1, 3, 3, -1, -1, -3, -3, 0, 0, 0, 0]);
        assert_eq!(radical.coeffs, vec![0, 0, 2, 2, 0, 0, -2, -2, 0, 0, 0, 0]);

        let (rational, radical) = split_equation(&system.equations[1]).unwrap();
        assert_eq!(
            rational.coeffs,
            vec![1, 1, 3, 3, 1, 1, 3, 3, -4, -4, -4, -4]
        );
        assert_eq!(radical.coeffs, vec![0, 0, 2, 2, 0, 0, 2, 2, -2, -2, -2, -2]);
    }

    #[test]
    fn simple_current_rules_for_the_order_three_case() {
        let tpl = c3_template().unwrap();
        let system = balance_system(&tpl, DEFAULT_BOUND).unwrap();
        let system = apply_simple_current_bounds(&tpl, system).unwrap();

        // Only the vacuum and the [1/2, 45/2] summand have dimension 1;
        // the latter is capped at multiplicity 1.
        assert_eq!(system.bounds[3], (0, 1));
        assert_eq!(system.bounds[1], (0, DEFAULT_BOUND));
        assert!(system.vanishes.is_empty());

        // Fusing [1/2, 45/2] with [1/16, 31/16] lands on [1/16, 175/16].
        assert!(system
            .transfers
            .contains(&TransferRule { current: 3, from: 4, to: 5 }));
        // Fusing it with itself lands back on the vacuum.
        assert!(system
            .transfers
            .contains(&TransferRule { current: 3, from: 3, to: 0 }));
    }

    #[test]
    fn the_order_three_system_solves_to_all_ones() {
        let tpl = c3_template().unwrap();
        let system = balance_system(&tpl, DEFAULT_BOUND).unwrap();
        let system = apply_simple_current_bounds(&tpl, system).unwrap();
        let solutions = solve(&system).unwrap();
        assert_eq!(solutions, vec![vec![1, 1, 1, 1, 1, 1]]);
    }

    #[test]
    fn the_order_five_system_needs_its_seeds() {
        let tpl = a5_template().unwrap();
        let system = balance_system(&tpl, DEFAULT_BOUND).unwrap();
        let mut system = apply_simple_current_bounds(&tpl, system).unwrap();

        // The three simple currents are capped.
        assert_eq!(system.bounds[1], (0, 1));
        assert_eq!(system.bounds[4], (0, 1));
        assert_eq!(system.bounds[5], (0, 1));
        assert!(system.vanishes.is_empty());

        // With the sixteenth-sector seeds pinned, the solution is unique.
        system.force("n9", 1).unwrap();
        system.force("n10", 1).unwrap();
        let solutions = solve(&system).unwrap();
        assert_eq!(solutions, vec![vec![1; 12]]);
    }

    #[test]
    fn forcing_the_double_current_off_kills_the_system() {
        let tpl = a5_template().unwrap();
        let system = balance_system(&tpl, DEFAULT_BOUND).unwrap();
        let mut system = apply_simple_current_bounds(&tpl, system).unwrap();
        system.force("n9", 1).unwrap();
        system.force("n10", 1).unwrap();
        system.force("n2", 0).unwrap();
        assert_eq!(solve(&system).unwrap(), Vec::<Vec<u64>>::new());
    }

    #[test]
    fn solutions_do_not_depend_on_equation_order() {
        let tpl = c3_template().unwrap();
        let system = balance_system(&tpl, DEFAULT_BOUND).unwrap();
        let mut system = apply_simple_current_bounds(&tpl, system).unwrap();
        let forward = solve(&system).unwrap();
        system.equations.reverse();
        system.transfers.reverse();
        assert_eq!(solve(&system).unwrap(), forward);
    }

    #[test]
    fn unknown_variables_cannot_be_forced() {
        let tpl = c3_template().unwrap();
        let mut system = balance_system(&tpl, DEFAULT_BOUND).unwrap();
        assert!(matches!(
            system.force("n99", 0),
            Err(DecompError::Solve(_))
        ));
    }
}
