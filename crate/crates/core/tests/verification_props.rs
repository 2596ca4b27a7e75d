use proptest::prelude::*;
use proptest::strategy::ValueTree;
use rlsc::combinatorics::Colex;
use rlsc::construction::{find_violated_event, moser_tardos_construct};
use rlsc::verification::*;
use rlsc::{BitColumn, CodeMatrix, CodeParams, Event};

/// Columns of `tuple` owning a row where every other member of `tuple` is 0.
fn private_count(m: &CodeMatrix, tuple: &[usize]) -> usize {
    tuple
        .iter()
        .filter(|&&j| {
            (0..m.rows()).any(|r| m.get(r, j) && tuple.iter().all(|&o| o == j || !m.get(r, o)))
        })
        .count()
}

/// Every column of every k-tuple has a private row.
fn raw_superimposed(m: &CodeMatrix, k: usize) -> bool {
    Colex::new(m.cols(), k).all(|tuple| private_count(m, &tuple) == k)
}

/// Every k-tuple has at least p columns with a private row.
fn raw_selector(m: &CodeMatrix, k: usize, p: usize) -> bool {
    Colex::new(m.cols(), k).all(|tuple| private_count(m, &tuple) >= p)
}

/// For every k-tuple and every (k-p+1)-subset B1 of it, some row has its
/// single 1 inside the tuple in a column of B1.
fn b1_b2_selector(m: &CodeMatrix, k: usize, p: usize) -> bool {
    Colex::new(m.cols(), k).all(|tuple| {
        Colex::new(k, k - p + 1).all(|pick| {
            (0..m.rows()).any(|r| {
                let ones: Vec<usize> = (0..k).filter(|&i| m.get(r, tuple[i])).collect();
                ones.len() == 1 && pick.contains(&ones[0])
            })
        })
    })
}

fn matrix_strategy(max_n: usize, max_t: usize) -> impl Strategy<Value = CodeMatrix> {
    (2usize..=max_n, 3usize..=max_t).prop_flat_map(|(n, t)| {
        let col = (1usize..=4.min(t)).prop_flat_map(move |w| proptest::sample::subsequence((0..t).collect::<Vec<_>>(), w));
        proptest::collection::vec(col, n).prop_map(move |supports| {
            let columns = supports.iter().map(|s| BitColumn::from_support(t, s)).collect();
            CodeMatrix::from_columns(t, columns).unwrap()
        })
    })
}

fn replay(m: &CodeMatrix, report: &VerificationReport) {
    match report.witness() {
        Some(Witness::Event { event }) => {
            assert!(event.is_violated_in(m));
            let (k, p) = match report.property {
                Property::Superimposed { k } => (k, k),
                Property::Selector { k, p } => (k, p),
                _ => unreachable!(),
            };
            assert!(event.is_well_formed(k, p));
        }
        Some(Witness::Runlength { column, rows: [a, b] }) => {
            let Property::Runlength { d } = report.property else { unreachable!() };
            assert!(m.get(*a, *column) && m.get(*b, *column) && b - a < d + 1);
        }
        Some(Witness::Weight { column, actual, expected }) => {
            assert_eq!(m.column(*column).weight(), *actual);
            assert_ne!(actual, expected);
        }
        None => assert!(!report.is_fail()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_checks_match_raw_definitions(m in matrix_strategy(12, 16), k in 1usize..=4) {
        let k = k.min(m.cols());
        let sup = is_superimposed_exact(&m, k, WorkLimit::UNLIMITED).unwrap();
        prop_assert_eq!(sup.is_pass(), raw_superimposed(&m, k));
        replay(&m, &sup);
        for p in 1..=k {
            let sel = is_selector_exact(&m, k, p, WorkLimit::UNLIMITED).unwrap();
            let raw = raw_selector(&m, k, p);
            prop_assert_eq!(sel.is_pass(), raw, "k={} p={}", k, p);
            prop_assert_eq!(b1_b2_selector(&m, k, p), raw);
            replay(&m, &sel);
        }
        let at_k = is_selector_exact(&m, k, k, WorkLimit::UNLIMITED).unwrap();
        prop_assert_eq!(at_k.is_pass(), sup.is_pass());
    }

    #[test]
    fn pass_at_k_implies_pass_below(m in matrix_strategy(10, 16), k in 2usize..=4) {
        let k = k.min(m.cols());
        let pass = |k| is_superimposed_exact(&m, k, WorkLimit::UNLIMITED).unwrap().is_pass();
        if pass(k) {
            prop_assert!((1..k).all(pass));
        }
    }

    #[test]
    fn first_event_is_replayable(m in matrix_strategy(10, 12), k in 1usize..=3) {
        let k = k.min(m.cols());
        for p in 1..=k {
            if let Some(ev) = find_violated_event(&m, k, p).unwrap() {
                prop_assert!(ev.is_violated_in(&m));
                prop_assert!(ev.is_well_formed(k, p));
                if p == k {
                    let is_superimposed = matches!(ev, Event::Superimposed { .. });
                    prop_assert!(is_superimposed);
                }
            }
        }
    }

    #[test]
    fn structural_checks_replay(m in matrix_strategy(8, 16), d in 0usize..4, w in 1usize..5) {
        let r = check_runlength(&m, d);
        prop_assert_eq!(r.is_pass(), m.columns().iter().all(|c| c.gap_violation(d).is_none()));
        replay(&m, &r);
        let r = check_column_weight(&m, w);
        prop_assert_eq!(r.is_pass(), m.columns().iter().all(|c| c.weight() == w));
        replay(&m, &r);
    }
}

#[test]
fn monte_carlo_flags_failing_matrices() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let strategy = matrix_strategy(10, 12);
    let (mut failing, mut flagged) = (0, 0);
    while failing < 25 {
        let m = strategy.new_tree(&mut runner).unwrap().current();
        let k = 2.min(m.cols());
        if is_superimposed_exact(&m, k, WorkLimit::UNLIMITED).unwrap().is_pass() {
            continue;
        }
        failing += 1;
        let mc = monte_carlo_check(&m, k, k, 100_000, failing).unwrap();
        if mc.is_fail() {
            flagged += 1;
            let Verdict::Estimated { first_violation: Some(ev), .. } = &mc.verdict else { panic!() };
            assert!(ev.is_violated_in(&m));
        }
    }
    assert!(flagged * 100 >= failing * 99, "{flagged}/{failing}");
}

#[test]
fn monte_carlo_never_flags_certified_codes() {
    let params = CodeParams::superimposed(2, 10, 2).with_weight(3).with_length(13);
    let (m, _) = moser_tardos_construct(&params, 11, None).unwrap();
    let mc = monte_carlo_check(&m, 2, 2, 20_000, 4).unwrap();
    assert!(!mc.is_fail() && !mc.is_pass());
}

#[test]
fn monte_carlo_detection_rate_on_duplicate_column() {
    // one bad pair among n columns: per-trial hit probability 2 / (n (n-1))
    let mut rows = vec!["1100000000".to_string()];
    for i in 2..10 {
        let mut r = vec!['0'; 10];
        r[i] = '1';
        rows.push(r.into_iter().collect());
    }
    let m = CodeMatrix::from_rows(&rows).unwrap();
    let mc = monte_carlo_check(&m, 2, 2, 90_000, 8).unwrap();
    let Verdict::Estimated { rate, interval, .. } = mc.verdict else { panic!() };
    let expected: f64 = 2.0 / 90.0;
    let se = (expected * (1.0 - expected) / 90_000.0).sqrt();
    assert!((rate - expected).abs() < 4.0 * se, "{rate} vs {expected}");
    assert!(interval[0] < rate && rate < interval[1]);
}
