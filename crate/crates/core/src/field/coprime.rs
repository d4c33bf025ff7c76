//! Pairwise coprime, square-free bases in F_p[t][θ] (factor refinement).
//! Every prime dividing a base element b has the same valuation in each
//! input polynomial, namely the exponent of b in it.

use super::bipoly::BiPoly;

fn is_unit(f: &BiPoly) -> bool {
    f.as_rpoly().is_some_and(|r| r.is_constant())
}

fn squarefree_split(b: &BiPoly) -> Option<Vec<BiPoly>> {
    let g = b.gcd(&b.derivative_theta()).gcd(&b.derivative_t());
    if is_unit(&g) {
        return None;
    }
    if g == b.normalized() {
        // both partial derivatives vanish: b is a p-th power
        return Some(vec![b.pth_root().expect("p-th power").normalized()]);
    }
    let rest = b.exact_div(&g).unwrap().normalized();
    Some(vec![g, rest])
}

/// A coprime square-free base for the non-unit parts of `inputs`.
pub fn coprime_base(inputs: &[BiPoly]) -> Vec<BiPoly> {
    let mut base: Vec<BiPoly> = Vec::new();
    let mut work: Vec<BiPoly> =
        inputs.iter().filter(|f| !f.is_zero() && !is_unit(f)).map(|f| f.normalized()).collect();
    while let Some(f) = work.pop() {
        if is_unit(&f) {
            continue;
        }
        if let Some(parts) = squarefree_split(&f) {
            work.extend(parts);
            continue;
        }
        let mut absorbed = false;
        for i in 0..base.len() {
            let g = base[i].gcd(&f);
            if is_unit(&g) {
                continue;
            }
            let b = base.swap_remove(i);
            if g == b && g == f {
                base.push(b);
            } else {
                work.push(b.exact_div(&g).unwrap().normalized());
                work.push(f.exact_div(&g).unwrap().normalized());
                work.push(g);
            }
            absorbed = true;
            break;
        }
        if !absorbed {
            base.push(f);
        }
    }
    base.sort_by(|a, b| a.cmp_canonical(b));
    base
}

/// Exponent of a square-free base element `b` in `f` (f nonzero).
pub fn multiplicity(f: &BiPoly, b: &BiPoly) -> i64 {
    let mut k = 0;
    let mut cur = f.clone();
    while let Some(q) = cur.exact_div(b) {
        cur = q;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_k;

    fn b(s: &str) -> BiPoly {
        parse_k(s, 3).unwrap().num().clone()
    }

    #[test]
    fn refines_to_coprime_squarefree() {
        let base = coprime_base(&[b("t^2*θ^2*(θ+t)"), b("θ*(θ+t)^3*(θ^3-t)"), b("2")]);
        assert_eq!(base, vec![b("t"), b("θ"), b("θ+t"), b("θ^3+2*t")]);
        assert_eq!(multiplicity(&b("θ*(θ+t)^3"), &b("θ+t")), 3);
    }

    #[test]
    fn handles_pth_powers() {
        let base = coprime_base(&[b("θ^3+t^3"), b("t^6")]);
        assert_eq!(base, vec![b("t"), b("θ+t")]);
    }
}
