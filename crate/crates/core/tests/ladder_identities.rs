use specgap::ladder::{alpha_cross_check, kernel_check, verify_word_expansion};

#[test]
fn kernel_vanishes_for_small_orders() {
    for order in 1..=4 {
        for n in 1..=order {
            assert!(kernel_check(order, n), "N={order} n={n}");
        }
    }
}

#[test]
fn kernel_vanishes_for_top_two_indices() {
    for order in 2..=8 {
        assert!(kernel_check(order, order), "N={order} n=N");
        assert!(kernel_check(order, order - 1), "N={order} n=N-1");
    }
}

#[test]
fn word_sum_equals_direct_product() {
    for order in 1..=4 {
        for n in 1..=order {
            let c = verify_word_expansion(order, n);
            assert!(c.agrees, "N={order} n={n}: {} vs {}", c.expansion.value, c.direct);
        }
    }
}

#[test]
fn alpha_closed_form_matches_diagonal_products() {
    let mismatches = alpha_cross_check(4, 8);
    assert!(mismatches.is_empty(), "{}", mismatches.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("\n"));
}
