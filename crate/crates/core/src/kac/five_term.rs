use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::cohomology::{cohomology_module, derivations, group_cohomology, module_coboundary, Cochain, Coefficients, CohomologyGroup};
use crate::exactlin::{coboundary, integer_kernel, solve_congruence, solve_mod, AbHom, CircleElement, CircleVec, FpAbGroup, FpPresentation, IntMatrix, SparseMatrix};
use crate::groups::GModule;
use crate::matched::MatchedPair;

use super::{CocyclePair, KacComplex, KacError, OpextResult, Route};

/// Largest `Tot³` for which the joint at `H³(F, Ĝ)` is certified through `H⁴_𝒜`.
pub const H4_LIMIT: usize = 250_000;

/// Exactness at one joint of a sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `im = ker`, checked as subgroup equality.
    Exact,
    NotExact,
    NotCertified(String),
}

impl Certificate {
    pub(super) fn of(holds: bool) -> Self {
        if holds {
            Certificate::Exact
        } else {
            Certificate::NotExact
        }
    }

    pub fn holds(&self) -> bool {
        *self == Certificate::Exact
    }

    pub fn label(&self) -> &'static str {
        match self {
            Certificate::Exact => "exact",
            Certificate::NotExact => "not exact",
            Certificate::NotCertified(_) => "not certified",
        }
    }
}

/// Entries of `E_r^{p,q}` and the differentials that are implemented.
#[derive(Clone, Debug)]
pub struct SpectralPage {
    pub page: usize,
    pub entries: BTreeMap<(usize, usize), FpAbGroup>,
    /// `d_r` keyed by source position.
    pub differentials: BTreeMap<(usize, usize), AbHom>,
}

/// Cochain data for the semidirect case, shared by the page, the lift and the report.
///
/// `H^k(G, ℚ/ℤ)` is an `F`-module through `(x·α)(s⃗) = α(s⃗◁x)`; `Ĝ = H¹(G, ℚ/ℤ)`.
pub struct FiveTermContext {
    mp: MatchedPair,
    kac: KacComplex,
    ghat: GModule,
    h1g: CohomologyGroup,
    h2g_module: GModule,
    h2g: CohomologyGroup,
    h2f: CohomologyGroup,
    h3f: CohomologyGroup,
    der: CohomologyGroup,
    /// Characters dual to the coordinates of `Ĝ`, as values on `G ∖ {e}`.
    chars: Vec<CircleVec>,
    block00: Vec<Vec<i64>>,
    block10: Vec<Vec<i64>>,
    h00: SparseMatrix,
    h01: SparseMatrix,
    h10: SparseMatrix,
}

impl FiveTermContext {
    pub fn new(mp: &MatchedPair) -> Result<Self, KacError> {
        if !mp.is_left_trivial() {
            return Err(KacError::NotSemidirect);
        }
        let (f, g) = (mp.f(), mp.g());
        let (ghat, h1g) = cohomology_module(g, f, |s, x| mp.tri_r(s, x), 1)?;
        let (h2g_module, h2g) = cohomology_module(g, f, |s, x| mp.tri_r(s, x), 2)?;
        let h2f = group_cohomology(f, &Coefficients::Module(ghat.clone()), 2, true)?;
        let h3f = group_cohomology(f, &Coefficients::Module(ghat.clone()), 3, true)?;
        let der = derivations(&h2g_module)?;
        let kac = KacComplex::new(mp, 2, 2)?;
        let chars = (0..ghat.dim())
            .map(|j| {
                let mut e = vec![0; ghat.dim()];
                e[j] = 1;
                h1g.circle_representative(&e)
            })
            .collect();
        let block = |p: usize, q: usize| -> Result<Vec<Vec<i64>>, KacError> {
            let v = kac.vertical(p, q)?;
            let nx = kac.rank(p, 0) / (g.order() - 1);
            let cols = kac.rank(p, q) / nx;
            Ok((0..kac.rank(p, q + 1) / nx)
                .map(|r| {
                    let mut row = vec![0i64; cols];
                    for &(c, k) in v.row(r * nx) {
                        debug_assert_eq!(c as usize % nx, 0);
                        row[c as usize / nx] += k;
                    }
                    row
                })
                .collect())
        };
        Ok(FiveTermContext {
            block00: block(0, 0)?,
            block10: block(1, 0)?,
            h00: kac.horizontal(0, 0)?,
            h01: kac.horizontal(0, 1)?,
            h10: kac.horizontal(1, 0)?,
            mp: mp.clone(),
            kac,
            ghat,
            h1g,
            h2g_module,
            h2g,
            h2f,
            h3f,
            der,
            chars,
        })
    }

    pub fn kac(&self) -> &KacComplex {
        &self.kac
    }

    /// `Ĝ` as an `F`-module.
    pub fn ghat(&self) -> &GModule {
        &self.ghat
    }

    /// `H²(G, ℚ/ℤ)` as an `F`-module.
    pub fn h2g_module(&self) -> &GModule {
        &self.h2g_module
    }

    pub fn h2_f_ghat(&self) -> &FpAbGroup {
        self.h2f.group()
    }

    pub fn h3_f_ghat(&self) -> &FpAbGroup {
        self.h3f.group()
    }

    pub fn der(&self) -> &FpAbGroup {
        self.der.group()
    }

    fn ng(&self) -> usize {
        self.mp.g().order() - 1
    }

    fn nx(&self, p: usize) -> usize {
        self.kac.rank(p, 0) / self.ng()
    }

    /// The `(p, 0)` cochain `(s; x⃗) ↦ c(x⃗)(s)` of an `F`-cochain `c` with values in `Ĝ`.
    pub fn embed(&self, p: usize, c: &[i64]) -> CircleVec {
        let r = self.ghat.dim();
        let nx = self.nx(p);
        let vals: Vec<CircleElement> = (0..self.ng() * nx)
            .map(|i| {
                let (s, x) = (i / nx, i % nx);
                (0..r).fold(CircleElement::ZERO, |acc, j| acc + self.chars[j].get(s).scale(c[x * r + j]))
            })
            .collect();
        CircleVec::from_elements(&vals)
    }

    /// Inverse of [`embed`](Self::embed) on vertically closed cochains.
    pub fn extract(&self, p: usize, v: &CircleVec) -> Result<Vec<i64>, KacError> {
        let nx = self.nx(p);
        let mut out = vec![];
        for x in 0..nx {
            let col: Vec<CircleElement> = (0..self.ng()).map(|s| v.get(s * nx + x)).collect();
            let c = self
                .h1g
                .class_of(&Cochain::Circle(CircleVec::from_elements(&col)))
                .ok_or_else(|| KacError::Invalid("cochain is not a character in the G-variable".into()))?;
            out.extend(c);
        }
        Ok(out)
    }

    /// Solves `d_v y = rhs` one `F`-tuple at a time; `block` is the vertical matrix on one tuple.
    fn solve_vertical(&self, block: &[Vec<i64>], rhs: &CircleVec, nx: usize) -> Option<CircleVec> {
        let cols = block.first().map_or(0, |r| r.len());
        let n = rhs.den() * self.mp.g().order() as i64;
        let scale = n / rhs.den();
        let mut out = vec![0i64; cols * nx];
        for x in 0..nx {
            let b: Vec<i64> = (0..block.len()).map(|s| rhs.numerators()[s * nx + x] * scale).collect();
            if b.iter().all(|&v| v == 0) {
                continue;
            }
            let y = solve_mod(block, cols, &b, n)?;
            for (s, v) in y.into_iter().enumerate() {
                out[s * nx + x] = v;
            }
        }
        Some(CircleVec::from_numerators(out, n))
    }

    /// `τ` at bidegree `(0, 1)` with `τ(·; x)` the chosen representative of `D(x)`.
    fn tau_of(&self, alpha: &[i64]) -> Result<CircleVec, KacError> {
        let r2 = self.h2g_module.dim();
        let d = match self.der.representative(alpha) {
            Cochain::Lattice(v) => v,
            Cochain::Circle(_) => unreachable!("derivations are lattice cochains"),
        };
        let nx = self.nx(0);
        let cols: Vec<CircleVec> = (0..nx).map(|x| self.h2g.circle_representative(&d[x * r2..(x + 1) * r2])).collect();
        let rows = self.kac.rank(0, 1) / nx;
        let vals: Vec<CircleElement> = (0..rows * nx).map(|i| cols[i % nx].get(i / nx)).collect();
        Ok(CircleVec::from_elements(&vals))
    }

    /// `E₂^{0,1} → E₂^{2,0}` on the derivation with coordinates `alpha`.
    pub fn d2(&self, alpha: &[i64]) -> Result<Vec<i64>, KacError> {
        Ok(self.d2_cochains(alpha, None, None)?.2)
    }

    /// `d₂` after adding `d_v b` to the chosen `τ` and the character-valued `c` to `γ`; the
    /// class does not depend on either choice.
    pub fn d2_with(&self, alpha: &[i64], b: &CircleVec, c: &[i64]) -> Result<Vec<i64>, KacError> {
        Ok(self.d2_cochains(alpha, Some(b), Some(c))?.2)
    }

    /// `d₂` from explicit cochains: a vertical cocycle `tau` at `(0, 1)` and `gamma` at `(1, 0)`
    /// with `d_h τ + d_v γ = 0`.
    pub fn d2_from(&self, tau: &CircleVec, gamma: &CircleVec) -> Result<Vec<i64>, KacError> {
        if !coboundary(&self.kac.vertical(0, 1)?, tau).is_zero() {
            return Err(KacError::LiftFailed("τ is not a vertical cocycle".into()));
        }
        if !coboundary(&self.h01, tau).add(&coboundary(&self.kac.vertical(1, 0)?, gamma)).is_zero() {
            return Err(KacError::LiftFailed("d_h τ + d_v γ ≠ 0".into()));
        }
        let c3 = self.extract(2, &coboundary(&self.h10, gamma))?;
        self.h3f.class_of(&Cochain::Lattice(c3)).ok_or_else(|| KacError::LiftFailed("d_h γ is not a cocycle".into()))
    }

    /// `(τ, γ, class of d_h γ)` with `d_h τ + d_v γ = 0`.
    fn d2_cochains(&self, alpha: &[i64], b: Option<&CircleVec>, c: Option<&[i64]>) -> Result<(CircleVec, CircleVec, Vec<i64>, Vec<i64>), KacError> {
        let mut tau = self.tau_of(alpha)?;
        if let Some(b) = b {
            tau = tau.add(&coboundary(&self.kac.vertical(0, 0)?, b));
        }
        let rhs = coboundary(&self.h01, &tau).neg();
        let mut gamma = self
            .solve_vertical(&self.block10, &rhs, self.nx(1))
            .ok_or_else(|| KacError::LiftFailed("d_h τ is not vertically exact".into()))?;
        if let Some(c) = c {
            gamma = gamma.add(&self.embed(1, c));
        }
        let z = coboundary(&self.h10, &gamma);
        let c3 = self.extract(2, &z)?;
        let class = self.h3f.class_of(&Cochain::Lattice(c3.clone())).ok_or_else(|| KacError::LiftFailed("d_h γ is not a cocycle".into()))?;
        Ok((tau, gamma, class, c3))
    }

    /// A total cocycle projecting to `alpha`, which must lie in `ker d₂`.
    pub fn lift(&self, alpha: &[i64]) -> Result<CocyclePair, KacError> {
        let (tau, gamma, class, c3) = self.d2_cochains(alpha, None, None)?;
        if !self.h3f.group().is_zero(&class) {
            return Err(KacError::LiftFailed("the derivation is not in the kernel of d₂".into()));
        }
        let a = module_coboundary(&self.ghat, 2);
        let mods: Vec<i64> = (0..a.rows()).map(|i| self.ghat.moduli()[i % self.ghat.dim()]).collect();
        let rhs: Vec<BigInt> = c3.iter().map(|&v| BigInt::from(v)).collect();
        let c2 = solve_congruence(&a, &rhs, &mods).ok_or_else(|| KacError::LiftFailed("d_h γ is not a coboundary".into()))?;
        let c2: Vec<i64> = c2.iter().zip(&mods).map(|(v, &m)| (v % BigInt::from(m)).to_i64().expect("reduced")).collect();
        let pair = CocyclePair::new(&self.mp, gamma.sub(&self.embed(1, &c2)), tau)?;
        self.check_cocycle(&pair)?;
        Ok(pair)
    }

    fn check_cocycle(&self, pair: &CocyclePair) -> Result<(), KacError> {
        if !coboundary(&self.kac.total_coboundary(1)?, &pair.to_total()).is_zero() {
            return Err(KacError::Invalid("assembled pair is not a total cocycle".into()));
        }
        Ok(())
    }

    /// `i : H²(F, Ĝ) → Opext` on a class, as a total cocycle concentrated in `(1, 0)`.
    pub fn include(&self, class: &[i64]) -> Result<CocyclePair, KacError> {
        let c = match self.h2f.representative(class) {
            Cochain::Lattice(v) => v,
            Cochain::Circle(_) => unreachable!("finite-module cohomology is a lattice model"),
        };
        let tau = CircleVec::zeros(self.kac.rank(0, 1));
        CocyclePair::new(&self.mp, self.embed(1, &c), tau)
    }

    /// `π : Opext → Der(F, H²(G, ℚ/ℤ))` on a total cocycle.
    pub fn project(&self, pair: &CocyclePair) -> Result<Vec<i64>, KacError> {
        let nx = self.nx(0);
        let tau = pair.tau_vec();
        let rows = self.kac.rank(0, 1) / nx;
        let mut v = vec![];
        for x in 0..nx {
            let col: Vec<CircleElement> = (0..rows).map(|s| tau.get(s * nx + x)).collect();
            let c = self
                .h2g
                .class_of(&Cochain::Circle(CircleVec::from_elements(&col)))
                .ok_or_else(|| KacError::Invalid("τ(·; x) is not a cocycle".into()))?;
            v.extend(c);
        }
        self.der.class_of(&Cochain::Lattice(v)).ok_or_else(|| KacError::Invalid("projection is not a derivation".into()))
    }

    /// For a total cocycle with `π = 0`, the class in `H²(F, Ĝ)` it comes from.
    pub fn preimage(&self, pair: &CocyclePair) -> Result<Vec<i64>, KacError> {
        let b = self
            .solve_vertical(&self.block00, &pair.tau_vec().neg(), self.nx(0))
            .ok_or_else(|| KacError::LiftFailed("τ is not vertically exact".into()))?;
        let sigma = pair.sigma_vec().sub(&coboundary(&self.h00, &b));
        let c = self.extract(1, &sigma)?;
        self.h2f.class_of(&Cochain::Lattice(c)).ok_or_else(|| KacError::Invalid("reduced σ is not a cocycle".into()))
    }

    pub fn d2_hom(&self) -> Result<AbHom, KacError> {
        let der = self.der.group().clone();
        let images = (0..der.len()).map(|k| self.d2(&der.generator(k))).collect::<Result<Vec<_>, _>>()?;
        Ok(AbHom::from_images(der, self.h3f.group().clone(), &images))
    }

    /// `Opext` as the extension of `ker d₂` by `H²(F, Ĝ)`, with cocycles for its generators.
    ///
    /// Generators are the classes `i(e_j)` and lifts `L_k` of generators `β_k` of `ker d₂`.
    /// Every relation `Σ r_k β_k = 0` in `Der` makes `Σ r_k L_k` a class with `π = 0`, whose
    /// preimage under `i` supplies the relation between the two sets of generators.
    pub fn reconstruct(&self) -> Result<(FpAbGroup, Vec<CocyclePair>), KacError> {
        let h2 = self.h2f.group().clone();
        let der = self.der.group().clone();
        let kernel = self.d2_hom()?.kernel();
        let betas = kernel.generators.clone();
        let lifts = betas.iter().map(|b| self.lift(b)).collect::<Result<Vec<_>, _>>()?;
        let incl = (0..h2.len()).map(|j| self.include(&h2.generator(j))).collect::<Result<Vec<_>, _>>()?;
        let (a, b) = (h2.len(), betas.len());

        // relations among the β_k
        let rel = der.relation_matrix();
        let mut span = IntMatrix::zeros(der.len(), b + rel.cols());
        for (k, beta) in betas.iter().enumerate() {
            for i in 0..der.len() {
                span.set(i, k, beta[i].into());
            }
        }
        for j in 0..rel.cols() {
            for i in 0..der.len() {
                span.set(i, b + j, rel.get(i, j).clone());
            }
        }
        let ker = integer_kernel(&span);
        let mut relations: Vec<Vec<i64>> = (0..a)
            .map(|j| {
                let mut r = vec![0; a + b];
                r[j] = h2.modulus(j);
                r
            })
            .collect();
        for col in 0..ker.cols() {
            let coeffs: Vec<i64> = (0..b).map(|k| ker.get(k, col).to_i64().expect("small relation")).collect();
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            let w = coeffs.iter().zip(&lifts).fold(CocyclePair::zero(&self.mp), |acc, (&c, l)| acc.add(&l.scale(c)));
            let h = self.preimage(&w)?;
            let mut r: Vec<i64> = h.iter().map(|&v| -v).collect();
            r.extend(coeffs);
            relations.push(r);
        }
        let mut m = IntMatrix::zeros(a + b, relations.len());
        for (j, r) in relations.iter().enumerate() {
            for (i, &v) in r.iter().enumerate() {
                m.set(i, j, v.into());
            }
        }
        let pres = FpPresentation::new(m);
        let gens: Vec<&CocyclePair> = incl.iter().chain(&lifts).collect();
        let reps = (0..pres.group().len())
            .map(|k| {
                let coeffs = pres.section(&pres.group().generator(k));
                coeffs.iter().zip(&gens).fold(CocyclePair::zero(&self.mp), |acc, (&c, p)| acc.add(&p.scale(c)))
            })
            .collect();
        Ok((pres.group().clone(), reps))
    }
}

/// `E₂^{p,q}` for `p ≤ 2`, `q ≤ 1`: `Der(F, H^{q+1}(G))` at `p = 0` and `H^{p+1}(F, H^{q+1}(G))`
/// otherwise, with `d₂ : E₂^{0,1} → E₂^{2,0}`.
pub fn e2_page(mp: &MatchedPair) -> Result<SpectralPage, KacError> {
    let ctx = FiveTermContext::new(mp)?;
    let mut entries = BTreeMap::new();
    for (q, m) in [(0, &ctx.ghat), (1, &ctx.h2g_module)] {
        entries.insert((0, q), derivations(m)?.group().clone());
        for p in 1..=2 {
            entries.insert((p, q), group_cohomology(mp.f(), &Coefficients::Module(m.clone()), p + 1, false)?.group().clone());
        }
    }
    let mut differentials = BTreeMap::new();
    differentials.insert((0, 1), ctx.d2_hom()?);
    Ok(SpectralPage { page: 2, entries, differentials })
}

/// `d₂(α) ∈ H³(F, Ĝ)` for `α ∈ Der(F, H²(G, ℚ/ℤ))` in canonical coordinates.
pub fn d2_lift(mp: &MatchedPair, alpha: &[i64]) -> Result<Vec<i64>, KacError> {
    FiveTermContext::new(mp)?.d2(alpha)
}

/// `0 → H²(F,Ĝ) → Opext → Der(F,H²(G,ℚ/ℤ)) → H³(F,Ĝ) → H⁴_𝒜` with its maps and certificates.
#[derive(Clone, Debug)]
pub struct FiveTermReport {
    pub h2_f_ghat: FpAbGroup,
    /// `H¹` of the total complex.
    pub opext: FpAbGroup,
    pub der: FpAbGroup,
    pub h3_f_ghat: FpAbGroup,
    pub h4: Option<FpAbGroup>,
    pub i: AbHom,
    pub pi: AbHom,
    pub d2: AbHom,
    pub j: Option<AbHom>,
    pub ker_d2: FpAbGroup,
    /// `Opext` rebuilt from the outer terms.
    pub reconstructed: FpAbGroup,
    /// Joints `H²(F,Ĝ)` (injectivity), `Opext`, `Der`, `H³(F,Ĝ)`.
    pub certificates: Vec<(&'static str, Certificate)>,
}

impl FiveTermReport {
    pub fn all_exact(&self) -> bool {
        self.certificates.iter().all(|(_, c)| !matches!(c, Certificate::NotExact))
    }
}

/// The five-term sequence. The last joint is certified only when `Tot³` has at most `h4_limit`
/// coordinates.
pub fn five_term(mp: &MatchedPair, h4_limit: usize) -> Result<FiveTermReport, KacError> {
    let ctx = FiveTermContext::new(mp)?;
    let h2 = ctx.h2f.group().clone();
    let der = ctx.der.group().clone();
    let h3 = ctx.h3f.group().clone();
    let tot = ctx.kac.cohomology(1, true)?;
    let opext = tot.group().clone();

    let i_images = (0..h2.len())
        .map(|k| Ok(tot.class_of(&ctx.include(&h2.generator(k))?.to_total()).ok_or_else(|| KacError::Invalid("i(e) is not a cocycle".into()))?))
        .collect::<Result<Vec<_>, KacError>>()?;
    let i = AbHom::from_images(h2.clone(), opext.clone(), &i_images);
    let pi_images = (0..opext.len())
        .map(|k| ctx.project(&CocyclePair::from_total(mp, &tot.representative(&opext.generator(k)))?))
        .collect::<Result<Vec<_>, _>>()?;
    let pi = AbHom::from_images(opext.clone(), der.clone(), &pi_images);
    let d2 = ctx.d2_hom()?;
    let (reconstructed, _) = ctx.reconstruct()?;

    let mut certificates = vec![
        ("H2(F,Ghat)", Certificate::of(i.is_injective())),
        ("Opext", Certificate::of(i.image().equals(&pi.kernel()))),
        ("Der(F,H2(G))", Certificate::of(pi.image().equals(&d2.kernel()))),
    ];
    let t3 = KacComplex::up_to_total(mp, 3).map(|k| k.total_rank(3)).unwrap_or(usize::MAX);
    let (h4, j) = if t3 <= h4_limit {
        let k3 = KacComplex::up_to_total(mp, 3)?;
        let tot2 = k3.cohomology(2, false)?;
        let off = k3.blocks(2)[2].2;
        let images = (0..h3.len())
            .map(|k| {
                let c = match ctx.h3f.representative(&h3.generator(k)) {
                    Cochain::Lattice(v) => v,
                    Cochain::Circle(_) => unreachable!(),
                };
                let top = ctx.embed(2, &c);
                let v = CircleVec::concat(&[CircleVec::zeros(off), top]);
                tot2.class_of(&v).ok_or_else(|| KacError::Invalid("embedded H³ class is not a total cocycle".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let j = AbHom::from_images(h3.clone(), tot2.group().clone(), &images);
        certificates.push(("H3(F,Ghat)", Certificate::of(d2.image().equals(&j.kernel()))));
        (Some(tot2.group().clone()), Some(j))
    } else {
        certificates.push(("H3(F,Ghat)", Certificate::NotCertified(format!("Tot^3 has {t3} coordinates, over {h4_limit}"))));
        (None, None)
    };
    Ok(FiveTermReport { h2_f_ghat: h2, opext, der, h3_f_ghat: h3, h4, i, pi, ker_d2: d2.kernel().structure(), d2, j, reconstructed, certificates })
}

/// `Opext` by the five-term reconstruction.
pub(super) fn reconstruct(mp: &MatchedPair, representatives: bool) -> Result<OpextResult, KacError> {
    let ctx = FiveTermContext::new(mp)?;
    let (value, reps) = ctx.reconstruct()?;
    Ok(OpextResult { value, route: Route::FiveTermReconstruction, resolution: None, representatives: representatives.then_some(reps) })
}
