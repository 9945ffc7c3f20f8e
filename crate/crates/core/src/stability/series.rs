use crate::error::{Error, Result};
use crate::exactmat::Field;
use crate::functors::tau_inv;
use crate::homalg::{end_dim, ext1_space, middle_term};
use crate::kronrep::{tits_form, DimVec, KronRep};

/// `X_[1] = X`, and `X_[i+1]` the middle term of the nonsplit extension
/// `0 -> X_[i] -> X_[i+1] -> tau^{-i} X -> 0`.
pub fn quasi_series<F: Field>(x: &KronRep<F>, n: usize) -> Result<Vec<KronRep<F>>> {
    let e = end_dim(x);
    if e != 1 {
        return Err(Error::NotBrick(e));
    }
    if tits_form(x.r(), x.dim_vec()) > 0 {
        return Err(Error::Invalid(format!("{} is not a regular dimension vector", x.dim_vec())));
    }
    let mut out = vec![x.clone()];
    let mut shifted = x.clone();
    while out.len() < n {
        shifted = tau_inv(&shifted);
        let last = out.last().expect("nonempty");
        let ext = ext1_space(&shifted, last)?;
        if ext.dim() != 1 {
            return Err(Error::ExtDimUnexpected(ext.dim()));
        }
        let next = middle_term(last, &shifted, &ext.classes[0])?;
        out.push(next);
    }
    Ok(out)
}

/// `q_r(x) < 0` and `q_r(x) + x_2 - (r - 1) x_1 >= 1`.
pub fn elementary_filtration_predicate(r: usize, x: DimVec) -> bool {
    let q = tits_form(r, x);
    q < 0 && q + x.delta(r - 1) >= 1
}
