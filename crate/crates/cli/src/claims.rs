//! The built-in regression suite behind `spencer paper-verify`.

use anyhow::Result;
use spencer_core::{
    conformal_algebra, conformal_identification, cr_algebra, cr_integrable_subspace, gl_complex, prolong_dims,
    r21_submodule, space_form_algebra, LinearLieAlgebra, Rational, SpencerComplex, Subsets, Subspace,
};

pub struct Claim {
    pub id: String,
    pub statement: String,
    pub expected: String,
    pub computed: String,
}

impl Claim {
    pub fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

fn claim(id: &str, statement: String, expected: impl ToString, computed: impl ToString) -> Claim {
    Claim {
        id: id.into(),
        statement,
        expected: expected.to_string(),
        computed: computed.to_string(),
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn h_dim(c: &SpencerComplex<Rational>, p: usize) -> usize {
    c.cohomology_dims(p, 2, 0).dim_h
}

pub fn run_all() -> Result<Vec<Claim>> {
    let mut out = Vec::new();

    for n in 2..=6 {
        let res = prolong_dims(&LinearLieAlgebra::<Rational>::so(n), 1);
        out.push(claim("so-prolongation", format!("dim so({n})^1"), 0, res.dims()[1]));
    }

    for n in 3..=5 {
        let res = prolong_dims(&LinearLieAlgebra::<Rational>::co(n), 2);
        let d = res.dims();
        out.push(claim(
            "co-prolongation",
            format!("dims of co({n})^1, co({n})^2"),
            format!("{n},0"),
            format!("{},{}", d[1], d[2]),
        ));
        let (pro, phi) = conformal_identification::<Rational>(n)?;
        let conf = conformal_algebra::<Rational>(n)?;
        let iso = phi.rank() == conf.dim() && conf.homomorphism_defects(&pro, &phi)?.is_empty();
        out.push(claim(
            "conformal-is-prolongation",
            format!("conformal({n}) isomorphic to the prolongation of co({n})"),
            true,
            iso,
        ));
    }

    for m in 2..=3 {
        let (gl, _) = gl_complex::<Rational>(m, 1)?;
        let res = prolong_dims(&gl, 3);
        let expected: Vec<String> = (0..=3).map(|p| (2 * m * binom(m + p, p + 1)).to_string()).collect();
        let computed: Vec<String> = res.dims().iter().map(|d| d.to_string()).collect();
        out.push(claim(
            "glC-prolongation",
            format!("real dims of gl_{m}(C)^p, p = 0..3"),
            expected.join(","),
            computed.join(","),
        ));
        out.push(claim(
            "glC-infinite-type",
            format!("gl_{m}(C) finite by order 3"),
            false,
            res.is_finite_type(),
        ));
    }

    for nt in 3..=6 {
        for n in 2..nt {
            let c = SpencerComplex::with_leading_w(space_form_algebra::<Rational>(nt, 0)?, n)?;
            out.push(claim(
                "space-form-H02",
                format!("dim H^(0,2)(so_{nt}, R^{n})"),
                0,
                h_dim(&c, 0),
            ));
        }
    }

    for (n, nt) in [(2, 3), (2, 4), (3, 4), (3, 5)] {
        let own = SpencerComplex::with_leading_w(space_form_algebra::<Rational>(n, 0)?, n)?;
        let r21 = r21_submodule::<Rational>(n)?.dim();
        let expected = h_dim(&own, 1) + (nt - n) * r21 + binom(nt - n, 2) * binom(n, 2);
        let c = SpencerComplex::with_leading_w(space_form_algebra::<Rational>(nt, 0)?, n)?;
        out.push(claim(
            "space-form-H12",
            format!("dim H^(1,2)(so_{nt}, W), dim W = {n}, against the direct-sum total"),
            expected,
            h_dim(&c, 1),
        ));
    }

    let conf = |nt: usize, n: usize| -> Result<SpencerComplex<Rational>> {
        Ok(SpencerComplex::with_leading_w(conformal_algebra::<Rational>(nt)?, n)?)
    };
    out.push(claim(
        "conformal-H12",
        "dim H^(1,2), n = 2, n~ = 3".into(),
        0,
        h_dim(&conf(3, 2)?, 1),
    ));
    out.push(claim(
        "conformal-H22",
        "dim H^(2,2), n = 2, n~ = 3".into(),
        3,
        h_dim(&conf(3, 2)?, 2),
    ));
    for n in 4..=5 {
        for nt in [n, n + 1] {
            out.push(claim(
                "conformal-H22",
                format!("dim H^(2,2), n = {n}, n~ = {nt}"),
                0,
                h_dim(&conf(nt, n)?, 2),
            ));
        }
        out.push(claim(
            "conformal-H12-nonzero",
            format!("H^(1,2)(co_{n}) nonzero"),
            true,
            h_dim(&conf(n, n)?, 1) > 0,
        ));
    }
    out.push(claim(
        "conformal-H22-nonzero",
        "H^(2,2)(co_3) nonzero".into(),
        true,
        h_dim(&conf(3, 3)?, 2) > 0,
    ));

    for n in 2..=6 {
        let lhs = r21_submodule::<Rational>(n)?.dim() as i64 - n as i64;
        let n = n as i64;
        out.push(claim(
            "r21-dimension",
            format!("dim R^(2,1)({n}) - {n}"),
            (n * n * n - 4 * n) / 3,
            lhs,
        ));
    }

    for (m, k) in [(2, 1), (3, 1), (3, 2)] {
        let (a, cs) = cr_algebra::<Rational>(m, k, 2)?;
        let c = SpencerComplex::new(a, Subspace::coordinate(2 * m, cs.w.iter().copied()))?;
        for p in 1..=2 {
            out.push(claim(
                "cr-vanishing",
                format!("dim H^({p},2), m = {m}, k = {k}"),
                0,
                h_dim(&c, p),
            ));
        }
        if (m, k) == (2, 1) {
            let n = 2 * m;
            let sets = Subsets::new(2 * m - k, 2).len();
            let w_valued = Subspace::coordinate(sets * n, (0..sets * n).filter(|i| cs.w.contains(&(i % n))));
            let b = c.coboundaries(0, 2, 0).intersection(&w_valued)?;
            out.push(claim(
                "cr-integrability",
                format!("B^(0,2) cap W-valued equals the integrable forms, m = {m}, k = {k}"),
                true,
                b == cr_integrable_subspace(&cs)?,
            ));
        }
    }

    Ok(out)
}
