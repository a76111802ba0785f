//! The Kac double complex of a matched pair and the group `Opext(kF, k^G)` of abelian
//! extensions, computed three ways, together with the Kac exact sequence, the `E₂` page and
//! five-term sequence for trivial `▷`, closed-form values for several families, and export of
//! Hopf structure constants.

mod double;
mod five_term;
mod hopf;
mod oracles;
mod sequence;

pub use double::KacComplex;
pub use five_term::{d2_lift, e2_page, five_term, Certificate, FiveTermContext, FiveTermReport, SpectralPage, H4_LIMIT};
pub use hopf::{hopf_data, HopfData, HopfReport, Phase};
pub use oracles::{cyclic_odd_v, matrix_a_opext, odd_v_opext, swap_opext};
pub use sequence::{kac_sequence, KacSequence, SequenceMap, SequenceTerm};

use crate::cohomology::{relative_auslander_with, CohomologyError, Tuples};
use crate::complexes::{cyclic_product_resolution, extend_f_resolution, sigma_action_on_bar, ComplexError, Inflated};
use crate::exactlin::{CircleElement, CircleVec, ExactError, FpAbGroup};
use crate::groups::{abelian_invariants, GroupError, Side};
use crate::matched::{bicrossed_product, MatchedPair};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KacError {
    #[error("{what} has size {size}, over the limit {limit}")]
    SizeBound { what: String, size: usize, limit: usize },
    #[error("the left action ▷ is not trivial")]
    NotSemidirect,
    #[error("no lift exists: {0}")]
    LiftFailed(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("compatibility condition fails at {0:?}")]
    IncompatiblePair(Vec<usize>),
    #[error("{which} is not a 2-cocycle at {witness:?}")]
    NotCocycle { which: &'static str, witness: Vec<usize> },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Default bound on `|Σ|` for the Opext routes.
pub const MAX_SIGMA: usize = 128;

/// How `Opext` is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// `H¹` of the total complex of [`KacComplex`].
    KacTotal,
    /// `H³_𝒜(Σ, X; ℚ/ℤ)` from the completed truncated double complex.
    Relative,
    /// The five-term sequence, solving the extension problem on cocycles.
    FiveTermReconstruction,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::KacTotal => "kac_total",
            Route::Relative => "relative",
            Route::FiveTermReconstruction => "five_term_reconstruction",
        }
    }
}

/// Resolution of `ℤ` over `F` used by the relative route.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Resolution {
    /// Bar resolution with the `Σ`-action on `F`.
    Bar,
    /// Tensor product of periodic resolutions of the cyclic factors, for abelian `F` and trivial `▷`.
    CyclicTensor,
    /// `CyclicTensor` when it applies, otherwise `Bar`.
    #[default]
    Auto,
}

impl Resolution {
    pub fn resolve(self, mp: &MatchedPair) -> Resolution {
        match self {
            Resolution::Auto if mp.is_left_trivial() && mp.f().is_abelian() => Resolution::CyclicTensor,
            Resolution::Auto => Resolution::Bar,
            r => r,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Resolution::Bar => "bar",
            Resolution::CyclicTensor => "cyclic-tensor",
            Resolution::Auto => "auto",
        }
    }
}

#[derive(Clone, Debug)]
pub struct OpextOptions {
    pub resolution: Resolution,
    pub representatives: bool,
    pub max_sigma: usize,
}

impl Default for OpextOptions {
    fn default() -> Self {
        OpextOptions { resolution: Resolution::Auto, representatives: true, max_sigma: MAX_SIGMA }
    }
}

/// A normalized pair `σ : G×F×F → ℚ/ℤ`, `τ : G×G×F → ℚ/ℤ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocyclePair {
    nf: usize,
    ng: usize,
    sigma: CircleVec,
    tau: CircleVec,
}

impl CocyclePair {
    /// `sigma` is indexed like bidegree `(1, 0)` and `tau` like `(0, 1)` of [`KacComplex`].
    pub fn new(mp: &MatchedPair, sigma: CircleVec, tau: CircleVec) -> Result<Self, KacError> {
        let (nf, ng) = (mp.f().order(), mp.g().order());
        if sigma.len() != (ng - 1) * (nf - 1) * (nf - 1) || tau.len() != (ng - 1) * (ng - 1) * (nf - 1) {
            return Err(KacError::Invalid("cochain lengths do not match the pair".into()));
        }
        Ok(CocyclePair { nf, ng, sigma, tau })
    }

    pub fn zero(mp: &MatchedPair) -> Self {
        let (nf, ng) = (mp.f().order(), mp.g().order());
        CocyclePair { nf, ng, sigma: CircleVec::zeros((ng - 1) * (nf - 1) * (nf - 1)), tau: CircleVec::zeros((ng - 1) * (ng - 1) * (nf - 1)) }
    }

    /// Build from value functions; normalization is imposed by ignoring identity arguments.
    pub fn from_fn(mp: &MatchedPair, sigma: impl Fn(usize, usize, usize) -> CircleElement, tau: impl Fn(usize, usize, usize) -> CircleElement) -> Self {
        let (tf, tg) = (Tuples::new(mp.f().order()), Tuples::new(mp.g().order()));
        let mut sv = vec![];
        for s in 0..tg.count(1) {
            for xy in 0..tf.count(2) {
                let x = tf.decode(2, xy);
                sv.push(sigma(tg.decode(1, s)[0], x[0], x[1]));
            }
        }
        let mut tv = vec![];
        for st in 0..tg.count(2) {
            let s = tg.decode(2, st);
            for x in 0..tf.count(1) {
                tv.push(tau(s[0], s[1], tf.decode(1, x)[0]));
            }
        }
        CocyclePair { nf: mp.f().order(), ng: mp.g().order(), sigma: CircleVec::from_elements(&sv), tau: CircleVec::from_elements(&tv) }
    }

    /// Split a total 1-cochain of [`KacComplex`] into its `(0, 1)` and `(1, 0)` parts.
    pub fn from_total(mp: &MatchedPair, v: &CircleVec) -> Result<Self, KacError> {
        let (nf, ng) = (mp.f().order() - 1, mp.g().order() - 1);
        let split = ng * ng * nf;
        if v.len() != split + ng * nf * nf {
            return Err(KacError::Invalid("not a total 1-cochain".into()));
        }
        CocyclePair::new(mp, v.slice(split, v.len()), v.slice(0, split))
    }

    /// The total 1-cochain with `τ` first.
    pub fn to_total(&self) -> CircleVec {
        CircleVec::concat(&[self.tau.clone(), self.sigma.clone()])
    }

    pub fn sigma_vec(&self) -> &CircleVec {
        &self.sigma
    }

    pub fn tau_vec(&self) -> &CircleVec {
        &self.tau
    }

    /// `σ(s; x, y)`.
    pub fn sigma(&self, s: usize, x: usize, y: usize) -> CircleElement {
        if s == 0 || x == 0 || y == 0 {
            return CircleElement::ZERO;
        }
        let m = self.nf - 1;
        self.sigma.get(((s - 1) * m + (x - 1)) * m + (y - 1))
    }

    /// `τ(s, t; x)`.
    pub fn tau(&self, s: usize, t: usize, x: usize) -> CircleElement {
        if s == 0 || t == 0 || x == 0 {
            return CircleElement::ZERO;
        }
        let (m, n) = (self.nf - 1, self.ng - 1);
        self.tau.get(((s - 1) * n + (t - 1)) * m + (x - 1))
    }

    pub fn add(&self, other: &CocyclePair) -> CocyclePair {
        CocyclePair { nf: self.nf, ng: self.ng, sigma: self.sigma.add(&other.sigma), tau: self.tau.add(&other.tau) }
    }

    pub fn scale(&self, k: i64) -> CocyclePair {
        CocyclePair { nf: self.nf, ng: self.ng, sigma: self.sigma.scale(k), tau: self.tau.scale(k) }
    }
}

/// `Opext` with the route that produced it and, when requested, one cocycle pair per generator.
#[derive(Clone, Debug)]
pub struct OpextResult {
    pub value: FpAbGroup,
    pub route: Route,
    /// Resolution of `F` used by the relative route.
    pub resolution: Option<Resolution>,
    pub representatives: Option<Vec<CocyclePair>>,
}

fn check_sigma(mp: &MatchedPair, max_sigma: usize) -> Result<(), KacError> {
    let n = mp.f().order() * mp.g().order();
    if n > max_sigma {
        return Err(KacError::SizeBound { what: "|Σ|".into(), size: n, limit: max_sigma });
    }
    Ok(())
}

/// `Opext(kF, k^G)` by the chosen route.
pub fn opext(mp: &MatchedPair, route: Route, options: &OpextOptions) -> Result<OpextResult, KacError> {
    check_sigma(mp, options.max_sigma)?;
    match route {
        Route::KacTotal => {
            let k = KacComplex::new(mp, 2, 2)?;
            let h = k.cohomology(1, options.representatives)?;
            let reps = if options.representatives {
                let reps = (0..h.group().invariants().len())
                    .map(|i| {
                        let mut e = vec![0; h.group().invariants().len()];
                        e[i] = 1;
                        CocyclePair::from_total(mp, &h.representative(&e))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Some(reps)
            } else {
                None
            };
            Ok(OpextResult { value: h.group().clone(), route, resolution: None, representatives: reps })
        }
        Route::Relative => {
            let res = options.resolution.resolve(mp);
            let value = relative_opext(mp, res)?;
            Ok(OpextResult { value, route, resolution: Some(res), representatives: None })
        }
        Route::FiveTermReconstruction => five_term::reconstruct(mp, options.representatives),
    }
}

/// `H³_𝒜` with `Q` the bar resolution of `G` and `P` as chosen.
fn relative_opext(mp: &MatchedPair, res: Resolution) -> Result<FpAbGroup, KacError> {
    let bp = bicrossed_product(mp);
    let q = sigma_action_on_bar(&bp, Side::Right, 3)?;
    let h = match res {
        Resolution::CyclicTensor => {
            if !mp.is_left_trivial() {
                return Err(KacError::NotSemidirect);
            }
            let st = abelian_invariants(mp.f())?;
            let orders: Vec<usize> = st.group().invariants().iter().map(|&d| d as usize).collect();
            let mut radix = vec![1usize; orders.len()];
            for i in (0..orders.len().saturating_sub(1)).rev() {
                radix[i] = radix[i + 1] * orders[i + 1];
            }
            let to_target: Vec<usize> =
                mp.f().elements().map(|x| st.to_coords(x).iter().zip(&radix).map(|(&c, &r)| c as usize * r).sum()).collect();
            let inner = cyclic_product_resolution(&orders, 3)?;
            let over_f = Inflated::new(inner, mp.f(), to_target)?;
            relative_auslander_with(extend_f_resolution(&bp, over_f)?, q, 3, false)?
        }
        _ => relative_auslander_with(sigma_action_on_bar(&bp, Side::Left, 3)?, q, 3, false)?,
    };
    Ok(h.group().clone())
}

#[cfg(test)]
mod tests;
