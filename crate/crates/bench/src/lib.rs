//! Fixture ideals shared by the benchmarks.

use mintaylor::{classify::make_thm22, parse_ideal, MonomialIdeal};

/// All squarefree monomials of degree 2 in `n` variables; `C(n, 2)` generators
/// and far from minimal.
pub fn squarefree_quadrics(n: usize) -> MonomialIdeal {
    let gens: Vec<String> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| format!("x{i}*x{j}")))
        .collect();
    parse_ideal(&gens.join(", "), n)
        .expect("valid fixture")
        .ideal
}

/// Powers of the maximal ideal in `n` variables: `(x1, ..., xn)^d`.
pub fn maximal_power(n: usize, d: u32) -> MonomialIdeal {
    fn rec(n: usize, k: usize, left: u32, cur: &mut Vec<String>, out: &mut Vec<String>) {
        if k == n {
            if left == 0 {
                out.push(if cur.is_empty() {
                    "1".into()
                } else {
                    cur.join("*")
                });
            }
            return;
        }
        for e in (0..=left).rev() {
            if e > 0 {
                cur.push(format!("x{}^{e}", k + 1));
            }
            rec(n, k + 1, left - e, cur, out);
            if e > 0 {
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 0, d, &mut Vec::new(), &mut out);
    parse_ideal(&out.join(", "), n)
        .expect("valid fixture")
        .ideal
}

/// A Taylor-minimal stable ideal with `r` generators.
pub fn minimal_stable(r: usize) -> MonomialIdeal {
    make_thm22(r, &vec![1; r]).expect("valid parameters")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_sizes() {
        assert_eq!(squarefree_quadrics(5).len(), 10);
        assert_eq!(maximal_power(3, 2).len(), 6);
        assert_eq!(maximal_power(4, 3).len(), 20);
        assert_eq!(minimal_stable(6).len(), 6);
    }
}
