//! Fusion rules for minimal-model modules.
//!
//! Fusion of `(r1,s1)` with `(r2,s2)` runs over `r` from `|r1-r2|+1` to
//! `min(r1+r2-1, 2p-1-r1-r2)` in steps of two, and independently over `s`
//! with `q` in place of `p`; the resulting labels are canonicalized and
//! deduplicated. Multi-factor modules fuse factorwise.

use super::{KacLabel, MinimalError, MinimalModel};

/// Fuses two modules, returning canonical labels sorted by `(r,s)`.
pub fn fuse(
    model: &MinimalModel,
    a: &KacLabel,
    b: &KacLabel,
) -> Result<Vec<KacLabel>, MinimalError> {
    model.check_canonical(a)?;
    model.check_canonical(b)?;
    let r_hi = (a.r + b.r - 1).min(2 * model.p() - 1 - a.r - b.r);
    let s_hi = (a.s + b.s - 1).min(2 * model.q() - 1 - a.s - b.s);
    let mut out: Vec<KacLabel> = Vec::new();
    let mut r = a.r.abs_diff(b.r) + 1;
    while r <= r_hi {
        let mut s = a.s.abs_diff(b.s) + 1;
        while s <= s_hi {
            let label = model.canonical(r, s)?;
            if !out.contains(&label) {
                out.push(label);
            }
            s += 2;
        }
        r += 2;
    }
    out.sort();
    Ok(out)
}

/// Fuses two multi-factor modules factorwise.
///
/// `a` and `b` list one canonical label per model; the result is the
/// cartesian product of the per-factor fusions, sorted lexicographically.
pub fn fuse_tensor(
    models: &[MinimalModel],
    a: &[KacLabel],
    b: &[KacLabel],
) -> Result<Vec<Vec<KacLabel>>, MinimalError> {
    assert_eq!(models.len(), a.len(), "one label per factor");
    assert_eq!(models.len(), b.len(), "one label per factor");
    let mut out: Vec<Vec<KacLabel>> = vec![Vec::new()];
    for (i, model) in models.iter().enumerate() {
        let choices = fuse(model, &a[i], &b[i])?;
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for c in &choices {
                let mut row = prefix.clone();
                row.push(*c);
                next.push(row);
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(p: u64, q: u64) -> MinimalModel {
        MinimalModel::new(p, q).unwrap()
    }

    fn label(r: u64, s: u64) -> KacLabel {
        KacLabel { r, s }
    }

    #[test]
    fn ising_fusion_table() {
        let m = model(3, 4);
        let one = label(1, 1);
        let eps = label(2, 1);
        let sigma = label(2, 2);
        assert_eq!(fuse(&m, &one, &sigma).unwrap(), vec![sigma]);
        assert_eq!(fuse(&m, &eps, &eps).unwrap(), vec![one]);
        assert_eq!(fuse(&m, &eps, &sigma).unwrap(), vec![sigma]);
        assert_eq!(fuse(&m, &sigma, &sigma).unwrap(), vec![one, eps]);
    }

    #[test]
    fn simple_current_action_in_larger_models() {
        let m = model(11, 12);
        let cases = [
            ((10, 1), (10, 8), vec![(10, 4)]),
            ((10, 1), (10, 4), vec![(10, 8)]),
            ((10, 1), (10, 5), vec![(10, 7)]),
            ((10, 1), (10, 7), vec![(10, 5)]),
        ];
        for ((r1, s1), (r2, s2), expect) in cases {
            let got = fuse(&m, &label(r1, s1), &label(r2, s2)).unwrap();
            let expect: Vec<KacLabel> = expect.into_iter().map(|(r, s)| label(r, s)).collect();
            assert_eq!(got, expect);
        }

        let m = model(7, 8);
        let cases = [
            ((6, 1), (6, 6), vec![(6, 2)]),
            ((6, 1), (6, 4), vec![(6, 4)]),
            ((6, 1), (6, 5), vec![(6, 3)]),
        ];
        for ((r1, s1), (r2, s2), expect) in cases {
            let got = fuse(&m, &label(r1, s1), &label(r2, s2)).unwrap();
            let expect: Vec<KacLabel> = expect.into_iter().map(|(r, s)| label(r, s)).collect();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn fusion_is_commutative_on_a_full_table() {
        let m = model(7, 8);
        let labels = m.labels();
        for a in &labels {
            for b in &labels {
                assert_eq!(fuse(&m, a, b).unwrap(), fuse(&m, b, a).unwrap());
            }
        }
    }

    #[test]
    fn vacuum_is_the_fusion_identity() {
        let m = model(11, 12);
        for l in m.labels() {
            assert_eq!(fuse(&m, &m.vacuum(), &l).unwrap(), vec![l]);
        }
    }

    #[test]
    fn noncanonical_inputs_are_rejected() {
        let m = model(11, 12);
        assert!(fuse(&m, &label(1, 8), &label(10, 1)).is_err());
    }

    #[test]
    fn tensor_fusion_is_factorwise() {
        let models = [model(3, 4), model(11, 12)];
        let a = [label(2, 1), label(10, 1)];
        let b = [label(2, 2), label(10, 8)];
        assert_eq!(
            fuse_tensor(&models, &a, &b).unwrap(),
            vec![vec![label(2, 2), label(10, 4)]]
        );

        let sigma_sq = fuse_tensor(&models[..1], &[label(2, 2)], &[label(2, 2)]).unwrap();
        assert_eq!(sigma_sq, vec![vec![label(1, 1)], vec![label(2, 1)]]);
    }
}
