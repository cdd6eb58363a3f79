use std::fmt;

/// What a formal symbol stands for. The derived order `V < W < A(0) < A(1) < …`
/// fixes the canonical monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    /// `v = 2(V − E)`.
    V,
    /// `V − E`, used only to print results in terms of the potential.
    W,
    /// Component `a_n` of a vector of test functions.
    A(u32),
}

/// A formal symbol together with its x-derivative order, e.g. `a0'''`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub order: u32,
}

impl Symbol {
    pub const fn v(order: u32) -> Self {
        Symbol { kind: SymbolKind::V, order }
    }

    pub const fn w(order: u32) -> Self {
        Symbol { kind: SymbolKind::W, order }
    }

    pub const fn a(n: u32, order: u32) -> Self {
        Symbol { kind: SymbolKind::A(n), order }
    }

    pub fn derived(self) -> Self {
        Symbol { order: self.order + 1, ..self }
    }

    pub fn a_index(&self) -> Option<u32> {
        match self.kind {
            SymbolKind::A(n) => Some(n),
            _ => None,
        }
    }
}

fn primes(order: u32) -> String {
    if order <= 3 {
        "'".repeat(order as usize)
    } else {
        format!("^({order})")
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SymbolKind::V => write!(f, "v{}", primes(self.order)),
            SymbolKind::W if self.order == 0 => write!(f, "(V-E)"),
            SymbolKind::W => write!(f, "V{}", primes(self.order)),
            SymbolKind::A(n) => write!(f, "a{n}{}", primes(self.order)),
        }
    }
}
