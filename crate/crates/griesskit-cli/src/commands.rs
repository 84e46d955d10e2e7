//! One runner per subcommand, each producing a [`CommandOutput`].
//!
//! Runners return `Err(String)` for usage-level problems (bad arguments,
//! missing case data); verification mismatches are reported through
//! [`CommandOutput::failed`] so the dispatcher can exit with status 1.

use std::str::FromStr;

use num_rational::BigRational;
use serde_json::{json, Value};

use griesskit::decomp::solve::solve;
use griesskit::decomp::verify::{conformal_factors, seeded_system, verify_theorem};
use griesskit::exactnum::matrix::mat_reduce;
use griesskit::exactnum::QFElement;
use griesskit::griess::build::{
    build_case_table, expected_adjoint_dimensions, spanning_gram,
};
use griesskit::griess::definition::{
    catalog, eigenspace, inner, multiply, PairClass,
};
use griesskit::minimal::fusion::fuse;
use griesskit::minimal::qdim::{qdim, qdim_numeric};
use griesskit::minimal::{identify_model, kac_lookup, KacLabel, MinimalModel};
use griesskit::modecalc::{c3_reference_states, c3_tabulated_matrix, w4_discrepancies, w4_gram};

use crate::report::{align_rows, coords_json, matrix_json, matrix_text, CommandOutput};

/// Numeric settings shared by every subcommand.
pub struct Config {
    /// Fixed-point working precision in bits.
    pub precision: u32,
    /// Tolerance for numeric-versus-exact agreement.
    pub tol: f64,
}

fn lib(err: impl std::fmt::Display) -> String {
    err.to_string()
}

fn decimal_digits(bits: u32) -> u32 {
    ((bits as f64) * std::f64::consts::LOG10_2).floor() as u32
}

fn label_str(label: &KacLabel) -> String {
    format!("({},{})", label.r, label.s)
}

fn model_str(model: &MinimalModel) -> String {
    format!("M({},{})", model.p(), model.q())
}

pub fn catalog_cmd() -> Result<CommandOutput, String> {
    let entries = catalog();
    let mut rows = vec![vec![
        "class".to_string(),
        "order".to_string(),
        "lambda1".to_string(),
        "lambda2".to_string(),
    ]];
    let mut cases = Vec::new();
    for entry in &entries {
        let lambda2 = entry.lambda2.as_ref().map(|l| l.to_string());
        rows.push(vec![
            entry.class.to_string(),
            entry.order.to_string(),
            entry.lambda1.to_string(),
            lambda2.clone().unwrap_or_else(|| "-".to_string()),
        ]);
        cases.push(json!({
            "class": entry.class.to_string(),
            "order": entry.order,
            "lambda1": entry.lambda1.to_string(),
            "lambda2": lambda2,
        }));
    }
    Ok(CommandOutput {
        text: format!("dihedral pair catalog\n\n{}", align_rows(&rows)),
        json: json!({ "cases": cases }),
        failed: false,
    })
}

pub fn table_cmd(case: PairClass) -> Result<CommandOutput, String> {
    let table = build_case_table(case).map_err(lib)?;
    let basis: Vec<String> = table.basis().iter().map(|b| b.name().to_string()).collect();
    let autos = table.automorphism_names();

    let mut product_rows = Vec::new();
    let mut product_json = Vec::new();
    for i in 0..table.dim() {
        for j in i..table.dim() {
            let value = table.product(i, j);
            product_rows.push(vec![
                format!("{} * {}", basis[i], basis[j]),
                format!("= {}", table.format_element(value)),
            ]);
            product_json.push(json!({
                "left": basis[i],
                "right": basis[j],
                "coords": coords_json(value.coords()),
                "rendered": table.format_element(value),
            }));
        }
    }

    let lambda2 = table.lambda2().map(|l| l.to_string());
    let mut text = format!(
        "case table {} (dimension {})\nlambda1 = {}\nlambda2 = {}\nautomorphisms: {}\n\nproducts:\n{}",
        case,
        table.dim(),
        table.lambda1(),
        lambda2.clone().unwrap_or_else(|| "-".to_string()),
        autos.join(", "),
        align_rows(&product_rows),
    );
    text.push_str(&format!("\npairing matrix:\n{}", matrix_text(table.gram())));

    Ok(CommandOutput {
        text,
        json: json!({
            "case": case.to_string(),
            "dimension": table.dim(),
            "lambda1": table.lambda1().to_string(),
            "lambda2": lambda2,
            "basis": basis,
            "automorphisms": autos,
            "products": product_json,
            "gram": matrix_json(table.gram()),
        }),
        failed: false,
    })
}

pub fn gram_cmd(case: PairClass) -> Result<CommandOutput, String> {
    let table = build_case_table(case).map_err(lib)?;
    let lambda2 = table
        .lambda2()
        .ok_or_else(|| format!("class {case} has no distance-two invariant"))?;
    let matrix = spanning_gram(table.lambda1(), lambda2).map_err(lib)?;
    let reduction = mat_reduce(&matrix);

    let mut text = format!(
        "spanning pairing matrix for class {case}\nlambda1 = {}, lambda2 = {}\n\n{}rank {}\n",
        table.lambda1(),
        lambda2,
        matrix_text(&matrix),
        reduction.rank,
    );
    if reduction.kernel.is_empty() {
        text.push_str("kernel: trivial\n");
    }
    for vector in &reduction.kernel {
        let parts: Vec<String> = vector.iter().map(|c| c.to_string()).collect();
        text.push_str(&format!("kernel vector: ({})\n", parts.join(", ")));
    }

    let kernel_json: Vec<Value> = reduction
        .kernel
        .iter()
        .map(|v| coords_json(v))
        .collect();
    Ok(CommandOutput {
        text,
        json: json!({
            "case": case.to_string(),
            "dimension": matrix.rows(),
            "lambda1": table.lambda1().to_string(),
            "lambda2": lambda2.to_string(),
            "matrix": matrix_json(&matrix),
            "rank": reduction.rank,
            "kernel": kernel_json,
        }),
        failed: false,
    })
}

pub fn eigen_cmd(case: PairClass) -> Result<CommandOutput, String> {
    let table = build_case_table(case).map_err(lib)?;
    let axis = table
        .axis("e")
        .ok_or_else(|| format!("class {case} has no axis named e"))?;

    let mut text = format!("adjoint eigenstructure of the axis e for class {case}\n");
    let mut eigen_json = Vec::new();
    for (eigenvalue, expected) in expected_adjoint_dimensions(case) {
        let basis = eigenspace(&table, &axis, &eigenvalue).map_err(lib)?;
        text.push_str(&format!(
            "\neigenvalue {eigenvalue}: dimension {} (expected {expected})\n",
            basis.len()
        ));
        let mut rendered = Vec::new();
        let mut coords = Vec::new();
        for vector in &basis {
            text.push_str(&format!("  {}\n", table.format_element(vector)));
            rendered.push(table.format_element(vector));
            coords.push(coords_json(vector.coords()));
        }
        eigen_json.push(json!({
            "value": eigenvalue.to_string(),
            "dimension": basis.len(),
            "expected": expected,
            "basis": coords,
            "rendered": rendered,
        }));
    }

    Ok(CommandOutput {
        text,
        json: json!({
            "case": case.to_string(),
            "axis": "e",
            "eigenvalues": eigen_json,
        }),
        failed: false,
    })
}

pub fn conformal_cmd(case: PairClass) -> Result<CommandOutput, String> {
    let table = build_case_table(case).map_err(lib)?;
    let axis = table
        .axis("e")
        .ok_or_else(|| format!("class {case} has no axis named e"))?;
    let factors = conformal_factors(&table).map_err(lib)?;

    let axis_charge = inner(&table, &axis, &axis)
        .and_then(|n| Ok(n.try_mul(&QFElement::integer(2))?))
        .map_err(lib)?;
    let mut text = format!(
        "conformal decomposition of the axis complement for class {case}\naxis central charge {axis_charge}\n"
    );
    let mut factor_json = Vec::new();
    let mut sum = axis;
    let mut total = axis_charge.clone();
    for (i, factor) in factors.iter().enumerate() {
        let model = factor
            .central_charge
            .as_rational()
            .map(identify_model)
            .transpose()
            .map_err(lib)?
            .map(|m| model_str(&m));
        text.push_str(&format!(
            "\nfactor {}:\n  blend parameter {}\n  scale {}\n  vector {}\n  norm {}\n  central charge {}{}\n",
            i + 2,
            factor
                .k
                .as_ref()
                .map(|k| k.to_string())
                .unwrap_or_else(|| "-".to_string()),
            factor.scale,
            table.format_element(&factor.vector),
            factor.norm,
            factor.central_charge,
            model
                .as_ref()
                .map(|m| format!(" ({m})"))
                .unwrap_or_default(),
        ));
        factor_json.push(json!({
            "k": factor.k.as_ref().map(|k| k.to_string()),
            "scale": factor.scale.to_string(),
            "vector": coords_json(factor.vector.coords()),
            "norm": factor.norm.to_string(),
            "central_charge": factor.central_charge.to_string(),
            "model": model,
        }));
        sum = sum.try_add(&factor.vector).map_err(lib)?;
        total = total.try_add(&factor.central_charge).map_err(lib)?;
    }

    let square = multiply(&table, &sum, &sum).map_err(lib)?;
    let doubled = sum.try_scale(&QFElement::integer(2)).map_err(lib)?;
    let sum_is_conformal = square == doubled;
    text.push_str(&format!(
        "\naxis plus factors conformal: {}\ntotal central charge {}\n",
        if sum_is_conformal { "yes" } else { "NO" },
        total,
    ));

    Ok(CommandOutput {
        text,
        json: json!({
            "case": case.to_string(),
            "axis_charge": axis_charge.to_string(),
            "factors": factor_json,
            "sum_is_conformal": sum_is_conformal,
            "total_charge": total.to_string(),
        }),
        failed: !sum_is_conformal,
    })
}

pub fn w4_cmd(case: PairClass) -> Result<CommandOutput, String> {
    let table = build_case_table(case).map_err(lib)?;
    let states = c3_reference_states(&table).map_err(lib)?;
    let names: Vec<String> = states.iter().map(|(name, _)| name.clone()).collect();
    let list: Vec<_> = states.into_iter().map(|(_, state)| state).collect();
    let gram = w4_gram(&table, &list).map_err(lib)?;
    let tabulated = c3_tabulated_matrix();
    let discrepancies = w4_discrepancies(&tabulated, &gram.matrix).map_err(lib)?;

    let ok = gram.rank == gram.matrix.rows() && !gram.det.is_zero();
    let mut text = format!(
        "weight-four pairing for class {case}\nstates: {}\n\nrecomputed matrix:\n{}rank {}, determinant {}\n\npreviously tabulated matrix:\n{}\ndiscrepancy ledger (tabulated vs recomputed):\n",
        names.join(", "),
        matrix_text(&gram.matrix),
        gram.rank,
        gram.det,
        matrix_text(&tabulated),
    );
    let mut discrepancy_json = Vec::new();
    for d in &discrepancies {
        text.push_str(&format!(
            "({}, {}): {} vs {}\n",
            d.row, d.col, d.tabulated, d.recomputed
        ));
        discrepancy_json.push(json!({
            "row": d.row,
            "col": d.col,
            "paper": d.tabulated.to_string(),
            "recomputed": d.recomputed.to_string(),
        }));
    }
    if !ok {
        text.push_str("recomputed matrix is singular\n");
    }

    Ok(CommandOutput {
        text,
        json: json!({
            "case": case.to_string(),
            "states": names,
            "recomputed_matrix": matrix_json(&gram.matrix),
            "paper_matrix": matrix_json(&tabulated),
            "rank": gram.rank,
            "det": gram.det.to_string(),
            "discrepancies": discrepancy_json,
        }),
        failed: !ok,
    })
}

pub fn fusion_cmd(
    model: (u64, u64),
    left: (u64, u64),
    right: (u64, u64),
) -> Result<CommandOutput, String> {
    let model = MinimalModel::new(model.0, model.1).map_err(lib)?;
    let a = KacLabel {
        r: left.0,
        s: left.1,
    };
    let b = KacLabel {
        r: right.0,
        s: right.1,
    };
    let products = fuse(&model, &a, &b).map_err(lib)?;

    let mut rows = Vec::new();
    let mut product_json = Vec::new();
    for label in &products {
        let weight = model.h(label).map_err(lib)?;
        rows.push(vec![label_str(label), format!("weight {weight}")]);
        product_json.push(json!({
            "label": label_str(label),
            "weight": weight.to_string(),
        }));
    }
    Ok(CommandOutput {
        text: format!(
            "{} x {} in {}:\n{}",
            label_str(&a),
            label_str(&b),
            model_str(&model),
            align_rows(&rows),
        ),
        json: json!({
            "model": model_str(&model),
            "left": label_str(&a),
            "right": label_str(&b),
            "products": product_json,
        }),
        failed: false,
    })
}

pub fn qdim_cmd(
    model: (u64, u64),
    weight: &str,
    config: &Config,
) -> Result<CommandOutput, String> {
    let model = MinimalModel::new(model.0, model.1).map_err(lib)?;
    let h = BigRational::from_str(weight).map_err(|_| format!("bad weight {weight:?}"))?;
    let label = kac_lookup(&model, &h).map_err(lib)?;
    let value = qdim(&model, &label).map_err(lib)?;
    let numeric = qdim_numeric(&model, &label, config.precision).map_err(lib)?;
    let numeric_str = numeric.to_decimal_string(decimal_digits(config.precision));

    let (within, exact_str) = match &value.exact {
        Some(exact) => {
            let diff = (exact.to_f64() - numeric.to_f64()).abs();
            (Some(diff <= config.tol), Some(exact.to_string()))
        }
        None => (None, None),
    };
    let failed = within == Some(false);

    let mut text = format!(
        "quantum dimension in {}\nlabel {} at weight {}\nnumeric: {}\nexact:   {}\n",
        model_str(&model),
        label_str(&label),
        h,
        numeric_str,
        exact_str.clone().unwrap_or_else(|| "-".to_string()),
    );
    match within {
        Some(true) => text.push_str("numeric and exact agree within tolerance\n"),
        Some(false) => text.push_str("numeric and exact DISAGREE beyond tolerance\n"),
        None => {}
    }
    if let Some(note) = &value.note {
        text.push_str(&format!("note: {note}\n"));
    }

    Ok(CommandOutput {
        text,
        json: json!({
            "model": model_str(&model),
            "label": label_str(&label),
            "h": h.to_string(),
            "numeric": numeric_str,
            "exact": exact_str,
            "note": value.note,
            "within_tolerance": within,
        }),
        failed,
    })
}

pub fn solve_cmd(
    case: PairClass,
    bound: u64,
    forces: &[(String, u64)],
) -> Result<CommandOutput, String> {
    let (template, mut system) = seeded_system(case, bound).map_err(lib)?;
    for (var, value) in forces {
        system.force(var, *value).map_err(lib)?;
    }
    let solutions = solve(&system).map_err(lib)?;

    let mut text = format!(
        "multiplicity search for class {case} (bound {bound})\nvariables: {}\n",
        system.vars.join(", "),
    );
    for (var, value) in forces {
        text.push_str(&format!("forced: {var} = {value}\n"));
    }
    if solutions.is_empty() {
        text.push_str("no solutions within the search box\n");
    }
    for solution in &solutions {
        let rendered: Vec<String> = template
            .summands
            .iter()
            .zip(solution)
            .map(|(s, n)| format!("{}={}", s.var, n))
            .collect();
        text.push_str(&format!("solution: {}\n", rendered.join(", ")));
    }

    let forced_json: Vec<Value> = forces
        .iter()
        .map(|(var, value)| json!({ "variable": var, "value": value }))
        .collect();
    Ok(CommandOutput {
        text,
        json: json!({
            "case": case.to_string(),
            "bound": bound,
            "variables": system.vars,
            "forced": forced_json,
            "solutions": solutions,
        }),
        failed: false,
    })
}

pub fn verify_cmd(case: PairClass, bound: u64) -> Result<CommandOutput, String> {
    let report = verify_theorem(case, bound);

    let mut text = format!("decomposition pipeline for class {case}\n\n");
    let mut stage_json = Vec::new();
    for stage in &report.stages {
        text.push_str(&format!(
            "{} {}\n",
            if stage.passed { "PASS" } else { "FAIL" },
            stage.name
        ));
        for detail in &stage.details {
            text.push_str(&format!("     {detail}\n"));
        }
        stage_json.push(json!({
            "name": stage.name,
            "passed": stage.passed,
            "details": stage.details,
        }));
    }
    if !report.summands.is_empty() {
        text.push_str("\ndecomposition:\n");
        for line in &report.summands {
            text.push_str(&format!("  {line}\n"));
        }
    }
    text.push_str("\nnotes:\n");
    for note in &report.notes {
        text.push_str(&format!("  - {note}\n"));
    }
    text.push_str(&format!(
        "\nresult: {}\n",
        if report.passed { "PASS" } else { "FAIL" }
    ));

    Ok(CommandOutput {
        text,
        json: json!({
            "case": case.to_string(),
            "passed": report.passed,
            "stages": stage_json,
            "solutions": report.solutions,
            "summands": report.summands,
            "notes": report.notes,
        }),
        failed: !report.passed,
    })
}
