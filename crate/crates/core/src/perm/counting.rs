use super::{all_permutations, PermError, PermGroup, Permutation};

/// Largest group order accepted by the brute-force routines.
pub const BRUTE_FORCE_ORDER_LIMIT: u128 = 1_000_000;

/// Largest degree for which the centralizer order is computed by enumerating `A_n`.
const CENTRALIZER_BRUTE_MAX_DEGREE: usize = 8;

/// Size of the class of 3-cycles in `A_n` (equal to the class in `S_n` for
/// `n >= 3`): `2 * C(n, 3)`.
pub fn three_cycle_class_size(n: usize) -> u128 {
    if n < 3 {
        return 0;
    }
    let n = n as u128;
    2 * (n * (n - 1) * (n - 2) / 6)
}

/// Counts 3-cycles by scanning every permutation of `{1..n}`.
pub fn count_three_cycles_brute(n: usize) -> u128 {
    all_permutations(n)
        .filter(Permutation::is_three_cycle)
        .count() as u128
}

/// Counts even permutations of degree `n` commuting with `c`.
pub fn centralizer_order_in_alternating_brute(c: &Permutation) -> u128 {
    all_permutations(c.degree())
        .filter(|g| g.is_even() && g.commutes_with(c))
        .count() as u128
}

/// Order of the centralizer of the 3-cycle `c` in `A_n`: brute force up to
/// degree 8, `3 (n-3)! / 2` beyond.
pub fn centralizer_order_in_alternating(c: &Permutation) -> Result<u128, PermError> {
    if !c.is_three_cycle() {
        return Err(PermError::NotThreeCycle(c.clone()));
    }
    let n = c.degree();
    if n <= CENTRALIZER_BRUTE_MAX_DEGREE {
        Ok(centralizer_order_in_alternating_brute(c))
    } else {
        Ok(centralizer_closed_form(n))
    }
}

pub(crate) fn centralizer_closed_form(n: usize) -> u128 {
    let fact: u128 = (1..=(n as u128 - 3)).product();
    3 * fact / 2
}

/// Whether `g` equals its derived subgroup, computed as the normal closure of
/// the commutators of its generators.
pub fn is_perfect(g: &PermGroup) -> Result<bool, PermError> {
    let order = g.order();
    if order > BRUTE_FORCE_ORDER_LIMIT {
        return Err(PermError::TooLarge {
            order,
            limit: BRUTE_FORCE_ORDER_LIMIT,
        });
    }
    let gens = g.generators();
    let mut normal_gens = Vec::new();
    for a in gens {
        for b in gens {
            // a^-1 b^-1 a b
            let comm = a.inverse().then(&b.inverse()).then(a).then(b);
            if !comm.is_identity() {
                normal_gens.push(comm);
            }
        }
    }
    let mut derived = PermGroup::new(g.degree(), normal_gens.clone())?;
    let mut i = 0;
    while i < normal_gens.len() {
        let x = normal_gens[i].clone();
        for s in gens {
            let y = x.conjugate_by(s);
            if !derived.contains(&y) {
                normal_gens.push(y);
                derived = PermGroup::new(g.degree(), normal_gens.clone())?;
            }
        }
        i += 1;
    }
    Ok(derived.order() == order)
}
