//! Randomized properties. Inputs are drawn as raw integers and reduced
//! into each field so one strategy serves every field size.

use std::sync::{Arc, LazyLock};

use proptest::prelude::*;

use oddspectra::field::Field;
use oddspectra::funcs::{self, FunctionKind};
use oddspectra::{boom, charsum, diff};

static ODD_FIELDS: LazyLock<Vec<Arc<Field>>> = LazyLock::new(|| {
    [(3u64, 1u32), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (3, 3), (7, 2)]
        .iter()
        .map(|&(p, n)| Arc::new(Field::new(p, n).unwrap()))
        .collect()
});

/// q = 3 (mod 4), small enough for per-case spectrum walks.
static BINOMIAL_FIELDS: LazyLock<Vec<Arc<Field>>> = LazyLock::new(|| {
    [(3u64, 1u32), (7, 1), (11, 1), (19, 1), (23, 1), (3, 3), (31, 1), (43, 1)]
        .iter()
        .map(|&(p, n)| Arc::new(Field::new(p, n).unwrap()))
        .collect()
});

fn pick(fields: &[Arc<Field>], which: usize) -> &Arc<Field> {
    &fields[which % fields.len()]
}

proptest! {
    #[test]
    fn field_laws(which: usize, a: u64, b: u64, c: u64) {
        let fld = pick(&ODD_FIELDS, which);
        let q = fld.q();
        let (a, b, c) = ((a % q) as u32, (b % q) as u32, (c % q) as u32);

        prop_assert_eq!(fld.add_idx(a, b), fld.add_idx(b, a));
        prop_assert_eq!(fld.mul_idx(a, b), fld.mul_idx(b, a));
        prop_assert_eq!(
            fld.add_idx(fld.add_idx(a, b), c),
            fld.add_idx(a, fld.add_idx(b, c))
        );
        prop_assert_eq!(
            fld.mul_idx(fld.mul_idx(a, b), c),
            fld.mul_idx(a, fld.mul_idx(b, c))
        );
        prop_assert_eq!(
            fld.mul_idx(a, fld.add_idx(b, c)),
            fld.add_idx(fld.mul_idx(a, b), fld.mul_idx(a, c))
        );
        prop_assert_eq!(fld.add_idx(a, fld.neg_idx(a)), 0);
        if a != 0 {
            prop_assert_eq!(fld.mul_idx(a, fld.inv_idx(a)), 1);
        }
        prop_assert_eq!(fld.pow_idx(a, q), a);
    }

    #[test]
    fn chi_is_a_multiplicative_sign(which: usize, x: u64, y: u64) {
        let fld = pick(&ODD_FIELDS, which);
        let q = fld.q();
        let (x, y) = ((x % (q - 1) + 1) as u32, (y % (q - 1) + 1) as u32);

        prop_assert_eq!(fld.chi_idx(fld.mul_idx(x, y)), fld.chi_idx(x) * fld.chi_idx(y));
        prop_assert_eq!(fld.chi_idx(fld.mul_idx(x, x)), 1);
        prop_assert_eq!(fld.chi_idx(0), 0);
        if q % 4 == 3 {
            prop_assert_eq!(fld.chi_idx(fld.neg_idx(1)), -1);
        }
    }

    #[test]
    fn quadratic_sums_match_closed_form(which: usize, a2: u64, a1: u64, a0: u64) {
        let fld = pick(&ODD_FIELDS, which);
        let q = fld.q();
        let a2 = a2 % (q - 1) + 1;
        let (a1, a0) = (a1 % q, a0 % q);

        let closed = charsum::quad_char_sum_closed(
            fld,
            fld.element(a2).unwrap(),
            fld.element(a1).unwrap(),
            fld.element(a0).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(closed, charsum::char_sum(fld, &[a0 as u32, a1 as u32, a2 as u32]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Negating u is the affine change F(x) -> (-1)^r F(-x), so the
    /// difference row at (a, -b) of the negated function equals the row
    /// at (a, (-1)^r b) of the original. Pair rows are symmetric in
    /// b -> -b outright (swap the pair), so they transfer with either
    /// sign. Both give the same spectra.
    #[test]
    fn u_negation_row_transforms(which: usize, u: u64, a: u64, b: u64) {
        let fld = pick(&BINOMIAL_FIELDS, which);
        let q = fld.q();
        let u_idx = (u % (q - 1) + 1) as u32;
        let a = a % (q - 1) + 1;
        let b = b % q;

        let f_pos = funcs::build_binomial(fld, None, fld.element(u_idx as u64).unwrap()).unwrap();
        let f_neg = funcs::build_binomial(
            fld,
            None,
            fld.element(fld.neg_idx(u_idx) as u64).unwrap(),
        )
        .unwrap();
        let r = match f_pos.kind() {
            FunctionKind::Binomial { r, .. } => *r,
            FunctionKind::Power { d } => *d,
        };

        let elt = |idx: u32| fld.element(idx as u64).unwrap();
        let a_elt = elt(a as u32);
        let b_elt = elt(b as u32);
        let neg_b = elt(fld.neg_idx(b as u32));
        let diff_b = if r % 2 == 1 { neg_b } else { b_elt };

        prop_assert_eq!(
            diff::delta(&f_neg, a_elt, neg_b).unwrap(),
            diff::delta(&f_pos, a_elt, diff_b).unwrap()
        );
        if b != 0 {
            prop_assert_eq!(
                boom::beta(&f_pos, a_elt, b_elt).unwrap(),
                boom::beta(&f_pos, a_elt, neg_b).unwrap()
            );
            prop_assert_eq!(
                boom::beta(&f_neg, a_elt, neg_b).unwrap(),
                boom::beta(&f_pos, a_elt, b_elt).unwrap()
            );
        }
    }

    /// Every spectrum carries its total-mass identities; building them
    /// for arbitrary u exercises those internal assertions, and the
    /// sums are rechecked here from the outside.
    #[test]
    fn spectrum_mass_identities(which: usize, u: u64) {
        let fld = pick(&BINOMIAL_FIELDS, which);
        let q = fld.q();
        let u_idx = u % (q - 1) + 1;

        let f = funcs::build_binomial(fld, None, fld.element(u_idx).unwrap()).unwrap();
        let d = diff::diff_spectrum(&f).unwrap();
        prop_assert_eq!(d.counts.values().sum::<u64>(), q);
        prop_assert_eq!(d.counts.iter().map(|(i, c)| i * c).sum::<u64>(), q);

        let bs = boom::boom_spectrum(&f).unwrap();
        prop_assert_eq!(bs.counts.values().sum::<u64>(), q - 1);
    }

    /// Row 1 determines every row, for the binomials and for plain
    /// power maps alike.
    #[test]
    fn rows_reduce_to_row_one(which: usize, u: u64, d: u64, a: u64) {
        let fld = pick(&BINOMIAL_FIELDS, which);
        let q = fld.q();
        let a_elt = fld.element(a % (q - 1) + 1).unwrap();

        let f = funcs::build_binomial(fld, None, fld.element(u % (q - 1) + 1).unwrap()).unwrap();
        prop_assert!(diff::verify_row_reduction(&f, a_elt).unwrap());
        prop_assert!(boom::verify_boom_row_reduction(&f, a_elt).unwrap());

        let g = funcs::build_power(fld, d % (q - 1) + 1).unwrap();
        prop_assert!(diff::verify_row_reduction(&g, a_elt).unwrap());
        prop_assert!(boom::verify_boom_row_reduction(&g, a_elt).unwrap());
    }
}
