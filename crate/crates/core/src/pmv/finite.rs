use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ogroups::GroupDescriptor;
use crate::par::Exec;
use crate::scalars::Rational;
use crate::value::Value;

/// A finite pseudo MV-algebra stored as full operation tables.
///
/// The primitive tables are `⊕`, `⁻` and `~`; `⊙`, `∨`, `∧` and the order are
/// derived and checked against each other when the algebra is built.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    size: usize,
    zero: usize,
    one: usize,
    oplus: Vec<usize>,
    lneg: Vec<usize>,
    rneg: Vec<usize>,
    odot: Vec<usize>,
    join: Vec<usize>,
    meet: Vec<usize>,
    leq: Vec<bool>,
    labels: Vec<Value>,
    index: HashMap<Value, usize>,
    descriptor: Option<GroupDescriptor>,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.oplus == other.oplus && self.lneg == other.lneg && self.rneg == other.rneg && self.labels == other.labels
    }
}

impl Eq for FiniteAlgebra {}

impl FiniteAlgebra {
    /// Builds an algebra from its primitive tables (row-major `⊕`) and checks
    /// the pseudo MV axioms exhaustively.
    pub fn from_tables(labels: Vec<Value>, oplus: Vec<usize>, lneg: Vec<usize>, rneg: Vec<usize>) -> Result<Self> {
        Self::from_tables_with(Exec::default(), labels, oplus, lneg, rneg)
    }

    pub fn from_tables_with(
        exec: Exec,
        labels: Vec<Value>,
        oplus: Vec<usize>,
        lneg: Vec<usize>,
        rneg: Vec<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Invalid("empty carrier".into()));
        }
        if oplus.len() != n * n || lneg.len() != n || rneg.len() != n {
            return Err(Error::Invalid("table sizes do not match the carrier".into()));
        }
        if oplus.iter().chain(&lneg).chain(&rneg).any(|&v| v >= n) {
            return Err(Error::Invalid("table entry outside the carrier".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate label {l}")));
            }
        }
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| oplus[z * n + x] == x && oplus[x * n + z] == x))
            .ok_or_else(|| Error::Invalid("no neutral element for ⊕".into()))?;
        let one = lneg[zero];
        let odot: Vec<usize> = exec.map(n * n, |k| {
            let (x, y) = (k / n, k % n);
            rneg[oplus[lneg[y] * n + lneg[x]]]
        });
        let join: Vec<usize> = exec.map(n * n, |k| {
            let (x, y) = (k / n, k % n);
            oplus[x * n + odot[rneg[x] * n + y]]
        });
        let meet: Vec<usize> = exec.map(n * n, |k| {
            let (x, y) = (k / n, k % n);
            odot[x * n + oplus[lneg[x] * n + y]]
        });
        let leq: Vec<bool> = exec.map(n * n, |k| {
            let (x, y) = (k / n, k % n);
            oplus[lneg[x] * n + y] == one
        });
        let alg = FiniteAlgebra {
            size: n,
            zero,
            one,
            oplus,
            lneg,
            rneg,
            odot,
            join,
            meet,
            leq,
            labels,
            index,
            descriptor: None,
        };
        alg.validate(exec)?;
        Ok(alg)
    }

    fn validate(&self, exec: Exec) -> Result<()> {
        let n = self.size;
        let fail = |what: &str, w: String| Err(Error::Invalid(format!("{what} fails at {w}")));
        let (z, o) = (self.zero, self.one);
        if self.rneg[z] != o || self.lneg[o] != z || self.rneg[o] != z {
            return fail("0⁻ = 0~ = 1 and 1⁻ = 1~ = 0", String::new());
        }
        for x in 0..n {
            if self.oplus(x, o) != o || self.oplus(o, x) != o {
                return fail("x ⊕ 1 = 1 ⊕ x = 1", self.labels[x].to_string());
            }
            if self.rneg[self.lneg[x]] != x || self.lneg[self.rneg[x]] != x {
                return fail("(x⁻)~ = (x~)⁻ = x", self.labels[x].to_string());
            }
        }
        let pair_bad = exec.find_first(n * n, |k| {
            let (x, y) = (k / n, k % n);
            let a5 = self.rneg[self.oplus(self.lneg[x], self.lneg[y])] == self.lneg[self.oplus(self.rneg[x], self.rneg[y])];
            let j = self.join(x, y);
            let a6 = j == self.oplus(y, self.odot(self.rneg[y], x))
                && j == self.oplus(self.odot(x, self.lneg[y]), y)
                && j == self.oplus(self.odot(y, self.lneg[x]), x);
            let a7 = self.meet(x, y) == self.odot(self.oplus(x, self.rneg[y]), y);
            let order = self.leq(x, y) == (j == y) && (self.leq(x, y) && self.leq(y, x)) == (x == y);
            (!(a5 && a6 && a7 && order)).then_some((x, y))
        });
        if let Some((x, y)) = pair_bad {
            return fail("the pseudo MV pair identities", format!("({}, {})", self.labels[x], self.labels[y]));
        }
        let assoc_bad = exec.find_first(n * n, |k| {
            let (x, y) = (k / n, k % n);
            let xy = self.oplus(x, y);
            (0..n).find(|&w| self.oplus(xy, w) != self.oplus(x, self.oplus(y, w))).map(|w| (x, y, w))
        });
        if let Some((x, y, w)) = assoc_bad {
            return fail(
                "associativity of ⊕",
                format!("({}, {}, {})", self.labels[x], self.labels[y], self.labels[w]),
            );
        }
        Ok(())
    }

    pub(crate) fn with_descriptor(mut self, d: GroupDescriptor) -> Self {
        self.descriptor = Some(d);
        self
    }

    /// The chain `M_n = Γ((1/n)ℤ, 1)` with `n + 1` elements.
    pub fn chain(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Param("M(n) needs n >= 1".into()));
        }
        let m = n as usize;
        let size = m + 1;
        let labels = (0..size).map(|i| Value::rat(Rational::ratio(i as i64, n as i64))).collect();
        let oplus = (0..size * size).map(|k| (k / size + k % size).min(m)).collect();
        let neg: Vec<usize> = (0..size).map(|i| m - i).collect();
        Ok(Self::from_tables(labels, oplus, neg.clone(), neg)?.with_descriptor(GroupDescriptor::ScaledInt(n)))
    }

    /// The one-element algebra.
    pub fn trivial() -> Self {
        Self::from_tables(vec![Value::int(0)], vec![0], vec![0], vec![0]).expect("one-element algebra is valid")
    }

    /// Direct product with componentwise operations; labels are tuples.
    pub fn product(factors: &[&FiniteAlgebra]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Param("product of no algebras".into()));
        }
        let sizes: Vec<usize> = factors.iter().map(|f| f.size).collect();
        let total = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s));
        let total = total.filter(|&t| t <= 1 << 16).ok_or_else(|| {
            Error::Resource(format!("product carrier of sizes {sizes:?} is too large to tabulate"))
        })?;
        let split = |mut k: usize| -> Vec<usize> {
            let mut out = vec![0; sizes.len()];
            for i in (0..sizes.len()).rev() {
                out[i] = k % sizes[i];
                k /= sizes[i];
            }
            out
        };
        let fuse = |parts: &[usize]| parts.iter().zip(&sizes).fold(0, |acc, (&p, &s)| acc * s + p);
        let coords: Vec<Vec<usize>> = (0..total).map(split).collect();
        let labels = coords
            .iter()
            .map(|c| Value::Tuple(c.iter().zip(factors).map(|(&i, f)| f.labels[i].clone()).collect()))
            .collect();
        let oplus = (0..total * total)
            .map(|k| {
                let (a, b) = (&coords[k / total], &coords[k % total]);
                let parts: Vec<usize> = factors.iter().enumerate().map(|(i, f)| f.oplus(a[i], b[i])).collect();
                fuse(&parts)
            })
            .collect();
        let neg = |which: fn(&FiniteAlgebra, usize) -> usize| -> Vec<usize> {
            coords
                .iter()
                .map(|c| {
                    let parts: Vec<usize> = factors.iter().enumerate().map(|(i, f)| which(f, c[i])).collect();
                    fuse(&parts)
                })
                .collect()
        };
        let alg = Self::from_tables(labels, oplus, neg(FiniteAlgebra::lneg), neg(FiniteAlgebra::rneg))?;
        let descs: Option<Vec<GroupDescriptor>> = factors.iter().map(|f| f.descriptor.clone()).collect();
        Ok(match descs {
            Some(ds) => alg.with_descriptor(GroupDescriptor::Product(ds)),
            None => alg,
        })
    }

    /// The interval algebra `[0,b]` for a Boolean `b`, with relativized
    /// negations `x⁻ ∧ b` and `x~ ∧ b`. Labels are inherited.
    pub fn interval(&self, b: usize) -> Result<(Self, Vec<usize>)> {
        if !self.is_boolean(b) {
            return Err(Error::NotBoolean(self.labels[b].to_string()));
        }
        let carrier: Vec<usize> = (0..self.size).filter(|&x| self.leq(x, b)).collect();
        let pos: HashMap<usize, usize> = carrier.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let k = carrier.len();
        let oplus = (0..k * k).map(|t| pos[&self.oplus(carrier[t / k], carrier[t % k])]).collect();
        let lneg = carrier.iter().map(|&x| pos[&self.meet(self.lneg[x], b)]).collect();
        let rneg = carrier.iter().map(|&x| pos[&self.meet(self.rneg[x], b)]).collect();
        let labels = carrier.iter().map(|&x| self.labels[x].clone()).collect();
        Ok((Self::from_tables(labels, oplus, lneg, rneg)?, carrier))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn oplus(&self, x: usize, y: usize) -> usize {
        self.oplus[x * self.size + y]
    }

    #[inline]
    pub fn odot(&self, x: usize, y: usize) -> usize {
        self.odot[x * self.size + y]
    }

    #[inline]
    pub fn lneg(&self, x: usize) -> usize {
        self.lneg[x]
    }

    #[inline]
    pub fn rneg(&self, x: usize) -> usize {
        self.rneg[x]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size + y]
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size + y]
    }

    /// `x → y = x⁻ ⊕ y`.
    #[inline]
    pub fn arrow(&self, x: usize, y: usize) -> usize {
        self.oplus(self.lneg[x], y)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }

    pub fn label(&self, x: usize) -> &Value {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[Value] {
        &self.labels
    }

    pub fn index_of(&self, v: &Value) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// The group descriptor this algebra was built from, if any.
    pub fn source_descriptor(&self) -> Option<&GroupDescriptor> {
        self.descriptor.as_ref()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|x| (0..x).all(|y| self.oplus(x, y) == self.oplus(y, x)))
    }

    pub fn is_boolean(&self, x: usize) -> bool {
        self.oplus(x, x) == x
    }

    /// Idempotent elements in carrier order.
    pub fn boolean_skeleton(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.is_boolean(x)).collect()
    }

    pub fn is_boolean_algebra(&self) -> bool {
        (0..self.size).all(|x| self.is_boolean(x))
    }

    /// Whether `x⁻ = x~` everywhere, with the first violating element.
    pub fn is_symmetric(&self) -> (bool, Option<usize>) {
        match (0..self.size).find(|&x| self.lneg[x] != self.rneg[x]) {
            None => (true, None),
            Some(x) => (false, Some(x)),
        }
    }

    /// Minimal non-zero idempotents.
    pub fn atoms(&self) -> Vec<usize> {
        let sk = self.boolean_skeleton();
        sk.iter()
            .copied()
            .filter(|&b| b != self.zero && sk.iter().all(|&c| c == self.zero || c == b || !self.leq(c, b)))
            .collect()
    }

    /// Decomposes a finite MV-algebra as `∏ M_{n_i}`, one chain per atom of
    /// the Boolean skeleton. Returns `(atom, n_i)` pairs.
    pub fn chain_decomposition(&self) -> Result<Vec<(usize, u64)>> {
        if !self.is_commutative() {
            return Err(Error::Unsupported("chain decomposition of a non-commutative table".into()));
        }
        if self.size == 1 {
            return Ok(Vec::new());
        }
        let parts: Vec<(usize, u64)> = self
            .atoms()
            .into_iter()
            .map(|b| (b, (0..self.size).filter(|&x| self.leq(x, b)).count() as u64 - 1))
            .collect();
        let product: u64 = parts.iter().map(|(_, n)| n + 1).product();
        if product as usize != self.size {
            return Err(Error::Invalid("atom intervals do not tile the carrier".into()));
        }
        Ok(parts)
    }

    /// A descriptor `G` with `Γ(G,u)` isomorphic to this algebra.
    pub fn to_descriptor(&self) -> Result<GroupDescriptor> {
        if let Some(d) = &self.descriptor {
            return Ok(d.clone());
        }
        let parts = self.chain_decomposition()?;
        match parts.len() {
            0 => Err(Error::Degenerate("the one-element algebra has no unital group".into())),
            1 => Ok(GroupDescriptor::ScaledInt(parts[0].1)),
            _ => Ok(GroupDescriptor::Product(parts.iter().map(|&(_, n)| GroupDescriptor::ScaledInt(n)).collect())),
        }
    }
}
