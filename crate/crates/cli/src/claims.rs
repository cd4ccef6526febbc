//! The closed-form side of every comparison, with optional fault injection.

use num_bigint::BigUint;
use polyperm_core::arith::{self, big_pow, factorial};
use polyperm_core::{fgroup, hgroup, sylow};

use crate::config::Fault;

#[derive(Clone, Copy, Debug, Default)]
pub struct Claims {
    fault: Option<Fault>,
}

impl Claims {
    pub fn new(fault: Option<Fault>) -> Self {
        Claims { fault }
    }

    fn corrupt(&self) -> bool {
        self.fault == Some(Fault::CorruptBeta)
    }

    pub fn beta(&self, p: u32, k: u32) -> u32 {
        let b = arith::beta(p, k);
        if self.corrupt() && k >= 2 {
            b + 1
        } else {
            b
        }
    }

    fn beta_sum(&self, p: u32, from: u32, to: u32) -> u64 {
        (from..=to).map(|k| self.beta(p, k) as u64).sum()
    }

    pub fn order_f(&self, p: u32, n: u32) -> BigUint {
        if !self.corrupt() {
            return fgroup::order_f(p, n);
        }
        big_pow(p, self.beta_sum(p, 1, n))
    }

    pub fn order_g(&self, p: u32, n: u32) -> BigUint {
        if !self.corrupt() {
            return fgroup::order_g(p, n);
        }
        if n <= 1 {
            return factorial(p);
        }
        factorial(p) * big_pow(p - 1, p as u64) * big_pow(p, p as u64 + self.beta_sum(p, 3, n))
    }

    /// `|ker(G_n -> G_{n-1})|` for `n >= 3`, or the fiber size of `F_n -> F_{n-1}`.
    pub fn kernel_order(&self, p: u32, n: u32) -> BigUint {
        big_pow(p, self.beta(p, n) as u64)
    }

    pub fn order_h(&self, p: u32) -> BigUint {
        hgroup::order_h(p)
    }

    pub fn sylow_count(&self, p: u32) -> BigUint {
        sylow::sylow_count(p)
    }

    pub fn normalizer_order(&self, p: u32) -> BigUint {
        sylow::normalizer_order(p)
    }

    /// `{(id, 1)}` for odd `p`, all of `H` for `p = 2`.
    pub fn intersection_order(&self, p: u32) -> BigUint {
        if p == 2 {
            self.order_h(2)
        } else {
            BigUint::from(1u32)
        }
    }

    pub fn sylow_order_gn(&self, p: u32, n: u32) -> BigUint {
        if !self.corrupt() {
            return sylow::sylow_order_gn(p, n);
        }
        big_pow(p, 1 + p as u64 + self.beta_sum(p, 3, n))
    }

    pub fn core_order(&self, p: u32, n: u32) -> BigUint {
        if !self.corrupt() {
            return big_pow(p, p as u64 + arith::beta_sum(p, 3, n));
        }
        big_pow(p, p as u64 + self.beta_sum(p, 3, n))
    }

    pub fn core_index(&self, p: u32) -> BigUint {
        self.order_h(p)
    }
}
