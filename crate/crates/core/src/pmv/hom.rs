use super::FiniteAlgebra;
use crate::par::Exec;

/// Whether `f` (indexed by the carrier of `m`) preserves `⊕`, `⁻`, `~`, `0` and `1`.
pub fn check_homomorphism(f: &[usize], m: &FiniteAlgebra, n: &FiniteAlgebra) -> bool {
    check_homomorphism_with(Exec::default(), f, m, n)
}

pub fn check_homomorphism_with(exec: Exec, f: &[usize], m: &FiniteAlgebra, n: &FiniteAlgebra) -> bool {
    let k = m.size();
    if f.len() != k || f.iter().any(|&y| y >= n.size()) {
        return false;
    }
    if f[m.zero()] != n.zero() || f[m.one()] != n.one() {
        return false;
    }
    let unary = (0..k).all(|x| f[m.lneg(x)] == n.lneg(f[x]) && f[m.rneg(x)] == n.rneg(f[x]));
    unary && exec.all(k * k, |t| {
        let (x, y) = (t / k, t % k);
        f[m.oplus(x, y)] == n.oplus(f[x], f[y])
    })
}

/// An injective homomorphism.
pub fn is_embedding(f: &[usize], m: &FiniteAlgebra, n: &FiniteAlgebra) -> bool {
    let mut seen = vec![false; n.size()];
    let injective = f.iter().all(|&y| y < n.size() && !std::mem::replace(&mut seen[y], true));
    injective && check_homomorphism(f, m, n)
}
