//! Antipodes given by their values on generators and extended
//! anti-multiplicatively, with checks of the antipode axioms.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::algebroid::tensors::{first, pair, second, Pairs};
use crate::algebroid::{elem_check, emb_check, render_elem, Elem};
use crate::error::{Error, Result};
use crate::kernel::lin::Lin;
use crate::kernel::scalar::Scalar;
use crate::kernel::word::Word;
use crate::quantum_spaces::Sphere;
use crate::report::{Check, Status};

use super::decompose::{split, Gen};

type Memo<S> = Mutex<HashMap<(Word, Word), Elem<S>>>;

/// A bijective anti-algebra map of `C(A, H)` fixed by its generator images.
pub struct AntipodeMap<S: Scalar> {
    pub name: String,
    n: usize,
    fwd: BTreeMap<Gen, Elem<S>>,
    inv: BTreeMap<Gen, Elem<S>>,
    fwd_memo: Memo<S>,
    inv_memo: Memo<S>,
}

impl<S: Scalar> AntipodeMap<S> {
    pub fn from_images(
        name: impl Into<String>,
        n: usize,
        fwd: BTreeMap<Gen, Elem<S>>,
        inv: BTreeMap<Gen, Elem<S>>,
    ) -> Result<Self> {
        let all = Gen::all(n);
        if all.iter().any(|g| !fwd.contains_key(g) || !inv.contains_key(g)) {
            return Err(Error::Config("antipode images must cover every generator".into()));
        }
        Ok(AntipodeMap {
            name: name.into(),
            n,
            fwd,
            inv,
            fwd_memo: Mutex::new(HashMap::new()),
            inv_memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn image(&self, g: Gen) -> &Elem<S> {
        &self.fwd[&g]
    }

    pub fn inverse_image(&self, g: Gen) -> &Elem<S> {
        &self.inv[&g]
    }

    pub fn apply(&self, s: &Sphere<S>, h: &Elem<S>) -> Result<Elem<S>> {
        self.extend(s, h, &self.fwd, &self.fwd_memo)
    }

    pub fn apply_inv(&self, s: &Sphere<S>, h: &Elem<S>) -> Result<Elem<S>> {
        self.extend(s, h, &self.inv, &self.inv_memo)
    }

    fn extend(&self, s: &Sphere<S>, h: &Elem<S>, images: &BTreeMap<Gen, Elem<S>>, memo: &Memo<S>) -> Result<Elem<S>> {
        if s.n() != self.n {
            return Err(Error::Config(format!("{} is defined for n = {}, not {}", self.name, self.n, s.n())));
        }
        let mut out = Lin::zero();
        for ((x, y), c) in h {
            out.add_scaled(&self.monomial(s, x, y, images, memo)?, c);
        }
        Ok(out)
    }

    /// Value on `x ⊗ y`; a peeling step `g · rest · g'` maps to
    /// `S(g') S(rest) S(g)`.
    fn monomial(
        &self,
        s: &Sphere<S>,
        x: &Word,
        y: &Word,
        images: &BTreeMap<Gen, Elem<S>>,
        memo: &Memo<S>,
    ) -> Result<Elem<S>> {
        let key = (x.clone(), y.clone());
        if let Some(v) = memo.lock().expect("memo poisoned").get(&key) {
            return Ok(v.clone());
        }
        let value = if x.is_empty() && y.is_empty() {
            s.alg_one()
        } else {
            let mut acc = Lin::zero();
            for step in split(s, x, y)? {
                let rest = self.extend(s, &step.rest, images, memo)?;
                let mut term = match step.right {
                    Some(g) => s.alg_mul(&images[&g], &rest)?,
                    None => rest,
                };
                term = s.alg_mul(&term, &images[&step.left])?;
                acc.add_scaled(&term, &step.coeff);
            }
            acc
        };
        memo.lock().expect("memo poisoned").insert(key, value.clone());
        Ok(value)
    }
}

fn images_from<S: Scalar>(
    s: &Sphere<S>,
    v: impl Fn(i32, i32) -> i32,
    w: impl Fn(i32, i32) -> i32,
) -> Result<BTreeMap<Gen, Elem<S>>> {
    let mut out = BTreeMap::new();
    for g in Gen::all(s.n()) {
        let img = match g {
            Gen::V(i, j) => s.gen_w(j as usize, i as usize)?.scale(&s.q_pow(v(i as i32, j as i32))),
            Gen::W(i, j) => s.gen_v(j as usize, i as usize)?.scale(&s.q_pow(w(i as i32, j as i32))),
        };
        out.insert(g, img);
    }
    Ok(out)
}

/// `S(V_ij) = q^{j-i} W_ji`, `S(W_ij) = q^{i-j} V_ji`.
pub fn antipode_s<S: Scalar>(s: &Sphere<S>) -> Result<AntipodeMap<S>> {
    let fwd = images_from(s, |i, j| j - i, |i, j| i - j)?;
    let inv = images_from(s, |i, j| i - j, |i, j| j - i)?;
    AntipodeMap::from_images("S", s.n(), fwd, inv)
}

/// The flip `x ⊗ y ↦ y ⊗ x`: `V_ij ↦ q^{i+j-2n} W_ji`, `W_ij ↦ q^{2n-i-j} V_ji`.
pub fn antipode_flip<S: Scalar>(s: &Sphere<S>) -> Result<AntipodeMap<S>> {
    let two_n = 2 * s.n() as i32;
    let fwd = images_from(s, |i, j| i + j - two_n, |i, j| two_n - i - j)?;
    let inv = fwd.clone();
    AntipodeMap::from_images("flip", s.n(), fwd, inv)
}

/// Swaps the legs of every term.
pub fn flip_direct<S: Scalar>(h: &Elem<S>) -> Elem<S> {
    h.map_keys(|(x, y)| (y.clone(), x.clone()))
}

/// Passes when every case agrees; otherwise reports the first mismatch.
pub(crate) fn all_equal<K: Ord + Clone, S: Scalar>(
    name: &str,
    cases: impl IntoIterator<Item = Result<(String, Lin<K, S>, Lin<K, S>)>>,
    render: impl Fn(&Lin<K, S>) -> String,
) -> Check {
    let mut count = 0;
    for case in cases {
        match case {
            Ok((label, l, r)) => {
                if l != r {
                    return Check::new(name, Status::Fail, format!("{label}: {}", render(&l)), render(&r));
                }
                count += 1;
            }
            Err(e) => return Check::from_error(name, &e),
        }
    }
    Check::new(name, Status::Pass, format!("{count} cases agree"), format!("{count} cases agree"))
}

/// `Σ S(h1)_(1') h2 ⊗ S(h1)_(2')`.
pub(crate) fn antipode_two_lhs<S: Scalar>(s: &Sphere<S>, a: &AntipodeMap<S>, h: &Elem<S>) -> Result<Pairs<S>> {
    let mut out = Lin::zero();
    for (k, c) in &s.coproduct(h)? {
        let d = s.coproduct(&a.apply(s, &first(k))?)?;
        out.add_scaled(&s.pairs_right_mul_first(&d, &second(k))?, c);
    }
    Ok(out)
}

/// `Σ S^{-1}(h2)_(1') ⊗ S^{-1}(h2)_(2') h1`.
pub(crate) fn antipode_three_lhs<S: Scalar>(s: &Sphere<S>, a: &AntipodeMap<S>, h: &Elem<S>) -> Result<Pairs<S>> {
    let mut out = Lin::zero();
    for (k, c) in &s.coproduct(h)? {
        let d = s.coproduct(&a.apply_inv(s, &second(k))?)?;
        out.add_scaled(&s.pairs_right_mul_second(&d, &first(k))?, c);
    }
    Ok(out)
}

/// The antipode axioms for `a` on all generators and base generators.
pub fn verify_antipode<S: Scalar>(s: &Sphere<S>, a: &AntipodeMap<S>) -> Vec<Check> {
    let nm = &a.name;
    let mut checks = Vec::new();
    let gens: Vec<(String, Elem<S>)> = match s.generators() {
        Ok(g) => g,
        Err(e) => return vec![Check::from_error(format!("{nm}: generators"), &e)],
    };
    let bases = match s.base_generators() {
        Ok(b) => b,
        Err(e) => return vec![Check::from_error(format!("{nm}: base generators"), &e)],
    };
    let one = s.alg_one();

    checks.push(Check::run(format!("{nm}: unit is fixed"), || Ok(elem_check(&a.apply(s, &one)?, &one))));
    checks.push(all_equal(
        &format!("{nm}: inverse undoes the map on generators"),
        gens.iter().flat_map(|(l, g)| {
            [
                a.apply(s, g).and_then(|x| a.apply_inv(s, &x)).map(|x| (format!("S^-1 S {l}"), x, g.clone())),
                a.apply_inv(s, g).and_then(|x| a.apply(s, &x)).map(|x| (format!("S S^-1 {l}"), x, g.clone())),
            ]
        }),
        render_elem,
    ));
    let pairs: Vec<_> = gens.iter().flat_map(|g| gens.iter().map(move |h| (g, h))).collect();
    checks.push(all_equal(
        &format!("{nm}: anti-multiplicative on generator pairs"),
        pairs.iter().map(|((lg, g), (lh, h))| {
            let lhs = a.apply(s, &s.alg_mul(g, h)?)?;
            let rhs = s.alg_mul(&a.apply(s, h)?, &a.apply(s, g)?)?;
            Ok((format!("{lg}{lh}"), lhs, rhs))
        }),
        render_elem,
    ));
    checks.push(all_equal(
        &format!("{nm}: inverse anti-multiplicative on generator pairs"),
        pairs.iter().map(|((lg, g), (lh, h))| {
            let lhs = a.apply_inv(s, &s.alg_mul(g, h)?)?;
            let rhs = s.alg_mul(&a.apply_inv(s, h)?, &a.apply_inv(s, g)?)?;
            Ok((format!("{lg}{lh}"), lhs, rhs))
        }),
        render_elem,
    ));
    for (lb, b) in &bases {
        checks.push(Check::run(format!("{nm}: S(t({lb})) = s({lb})"), || {
            Ok(elem_check(&a.apply(s, &s.tgt(b)?)?, &s.src(b)?))
        }));
    }
    checks.push(all_equal(
        &format!("{nm}: S^-1(s(b)) = t(b) on base generators"),
        bases.iter().map(|(lb, b)| Ok((lb.clone(), a.apply_inv(s, &s.src(b)?)?, s.tgt(b)?))),
        render_elem,
    ));
    checks.push(all_equal(
        &format!("{nm}: ε(S(t(b))) = b on base generators"),
        bases.iter().map(|(lb, b)| Ok((lb.clone(), s.counit(&a.apply(s, &s.tgt(b)?)?)?, s.normalize(b)?))),
        crate::kernel::word::render,
    ));

    let mut hs = vec![("1".to_string(), one.clone())];
    hs.extend(gens.iter().cloned());
    for (lh, h) in &hs {
        checks.push(Check::run(format!("{nm}: S(h1)_(1') h2 ⊗_B S(h1)_(2') = 1 ⊗_B S(h) at {lh}"), || {
            let lhs = s.e_b(&antipode_two_lhs(s, a, h)?)?;
            let rhs = s.e_b(&pair(&one, &a.apply(s, h)?))?;
            Ok(emb_check(&lhs, &rhs))
        }));
        checks.push(Check::run(
            format!("{nm}: S^-1(h2)_(1') ⊗_B S^-1(h2)_(2') h1 = S^-1(h) ⊗_B 1 at {lh}"),
            || {
                let lhs = s.e_b(&antipode_three_lhs(s, a, h)?)?;
                let rhs = s.e_b(&pair(&a.apply_inv(s, h)?, &one))?;
                Ok(emb_check(&lhs, &rhs))
            },
        ));
        checks.push(Check::run(format!("{nm}: S(h1) h2 = t(ε(S(h))) at {lh}"), || {
            let mut lhs = Lin::zero();
            for (k, c) in &s.coproduct(h)? {
                lhs.add_scaled(&s.alg_mul(&a.apply(s, &first(k))?, &second(k))?, c);
            }
            let rhs = s.tgt(&s.counit(&a.apply(s, h)?)?)?;
            Ok(elem_check(&lhs, &rhs))
        }));
        checks.push(Check::run(format!("{nm}: S^-1(h2) h1 = s(ε(S^-1(h))) at {lh}"), || {
            let mut lhs = Lin::zero();
            for (k, c) in &s.coproduct(h)? {
                lhs.add_scaled(&s.alg_mul(&a.apply_inv(s, &second(k))?, &first(k))?, c);
            }
            let rhs = s.src(&s.counit(&a.apply_inv(s, h)?)?)?;
            Ok(elem_check(&lhs, &rhs))
        }));
    }
    checks
}

/// The generator-driven flip agrees with swapping legs, and is an involution.
pub fn verify_flip_consistency<S: Scalar>(s: &Sphere<S>, flip: &AntipodeMap<S>, max_len: usize) -> Vec<Check> {
    let words = s.normal_words(max_len);
    let monomials: Vec<Elem<S>> = words
        .iter()
        .flat_map(|x| words.iter().map(move |y| (x, y)))
        .filter(|(x, y)| x.weight() + y.weight() == 0)
        .map(|(x, y)| Lin::basis((x.clone(), y.clone())))
        .collect();
    let gens = s.generators().unwrap_or_default();
    vec![
        all_equal(
            &format!("{}: agrees with swapping legs up to length {max_len}", flip.name),
            monomials.iter().map(|h| Ok((render_elem(h), flip.apply(s, h)?, flip_direct(h)))),
            render_elem,
        ),
        all_equal(
            &format!("{}: involution on generators", flip.name),
            gens.iter().map(|(l, g)| Ok((l.clone(), flip.apply(s, &flip.apply(s, g)?)?, g.clone()))),
            render_elem,
        ),
    ]
}
