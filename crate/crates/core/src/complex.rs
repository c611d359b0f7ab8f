//! Complexification of the multiquadratic field.
//!
//! Period-matrix entries and hyperplane pairings `<phi, delta>` live here.
//! Arithmetic is componentwise-exact; there is no floating point anywhere.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::scalar::{FieldContext, FieldElement};

/// `re + i*im` with both parts exact field elements of a shared context.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexFieldElement {
    re: FieldElement,
    im: FieldElement,
}

impl ComplexFieldElement {
    pub fn new(re: FieldElement, im: FieldElement) -> Self {
        assert!(
            re.context() == im.context(),
            "complex parts from different contexts"
        );
        ComplexFieldElement { re, im }
    }

    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        ComplexFieldElement {
            re: FieldElement::zero(ctx),
            im: FieldElement::zero(ctx),
        }
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        ComplexFieldElement {
            re: FieldElement::one(ctx),
            im: FieldElement::zero(ctx),
        }
    }

    /// The imaginary unit.
    pub fn i(ctx: &Arc<FieldContext>) -> Self {
        ComplexFieldElement {
            re: FieldElement::zero(ctx),
            im: FieldElement::one(ctx),
        }
    }

    pub fn from_real(re: FieldElement) -> Self {
        let im = FieldElement::zero(re.context());
        ComplexFieldElement { re, im }
    }

    pub fn from_rationals(ctx: &Arc<FieldContext>, re: BigRational, im: BigRational) -> Self {
        ComplexFieldElement {
            re: FieldElement::from_rational(ctx, re),
            im: FieldElement::from_rational(ctx, im),
        }
    }

    pub fn from_ints(ctx: &Arc<FieldContext>, re: i64, im: i64) -> Self {
        ComplexFieldElement {
            re: FieldElement::from_int(ctx, re),
            im: FieldElement::from_int(ctx, im),
        }
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        self.re.context()
    }

    pub fn re(&self) -> &FieldElement {
        &self.re
    }

    pub fn im(&self) -> &FieldElement {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexFieldElement {
            re: self.re.clone(),
            im: self.im.neg_ref(),
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        ComplexFieldElement {
            re: self.re.add_ref(&o.re),
            im: self.im.add_ref(&o.im),
        }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        ComplexFieldElement {
            re: self.re.sub_ref(&o.re),
            im: self.im.sub_ref(&o.im),
        }
    }

    pub fn neg_ref(&self) -> Self {
        ComplexFieldElement {
            re: self.re.neg_ref(),
            im: self.im.neg_ref(),
        }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        let re = self.re.mul_ref(&o.re).sub_ref(&self.im.mul_ref(&o.im));
        let im = self.re.mul_ref(&o.im).add_ref(&self.im.mul_ref(&o.re));
        ComplexFieldElement { re, im }
    }

    pub fn mul_real(&self, c: &FieldElement) -> Self {
        ComplexFieldElement {
            re: self.re.mul_ref(c),
            im: self.im.mul_ref(c),
        }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        ComplexFieldElement {
            re: self.re.mul_int(n),
            im: self.im.mul_int(n),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ComplexFieldElement {
            re: self.re.scale(c),
            im: self.im.scale(c),
        }
    }

    /// `|z|^2 = re^2 + im^2`, an exact real field element.
    pub fn norm_sq(&self) -> FieldElement {
        self.re.square().add_ref(&self.im.square())
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq().inv()?;
        Ok(ComplexFieldElement {
            re: self.re.mul_ref(&n),
            im: self.im.neg_ref().mul_ref(&n),
        })
    }

    pub fn div_ref(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_ref(&o.inv()?))
    }
}

impl fmt::Debug for ComplexFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + i*({})", self.re, self.im)
    }
}

macro_rules! forward_cplx_binop {
    ($trait:ident, $method:ident, $delegate:ident) => {
        impl std::ops::$trait for &ComplexFieldElement {
            type Output = ComplexFieldElement;
            fn $method(self, rhs: &ComplexFieldElement) -> ComplexFieldElement {
                self.$delegate(rhs)
            }
        }
        impl std::ops::$trait for ComplexFieldElement {
            type Output = ComplexFieldElement;
            fn $method(self, rhs: ComplexFieldElement) -> ComplexFieldElement {
                self.$delegate(&rhs)
            }
        }
    };
}

forward_cplx_binop!(Add, add, add_ref);
forward_cplx_binop!(Sub, sub, sub_ref);
forward_cplx_binop!(Mul, mul, mul_ref);

impl std::ops::Neg for &ComplexFieldElement {
    type Output = ComplexFieldElement;
    fn neg(self) -> ComplexFieldElement {
        self.neg_ref()
    }
}
impl std::ops::Neg for ComplexFieldElement {
    type Output = ComplexFieldElement;
    fn neg(self) -> ComplexFieldElement {
        self.neg_ref()
    }
}

impl std::ops::Div for ComplexFieldElement {
    type Output = ComplexFieldElement;
    fn div(self, rhs: ComplexFieldElement) -> ComplexFieldElement {
        self.div_ref(&rhs).expect("division by zero complex element")
    }
}
impl std::ops::Div for &ComplexFieldElement {
    type Output = ComplexFieldElement;
    fn div(self, rhs: &ComplexFieldElement) -> ComplexFieldElement {
        self.div_ref(rhs).expect("division by zero complex element")
    }
}
