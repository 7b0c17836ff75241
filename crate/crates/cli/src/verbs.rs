use std::collections::BTreeSet;

use clap::ValueEnum;
use thiserror::Error;

use qborch::algebra::{Algebra, Elem, ParseError};
use qborch::center::{self, CasimirVariant, CenterError, ToralElement};
use qborch::datum::{Datum, Root, Weight};
use qborch::half::DepthError;
use qborch::linalg;
use qborch::module::{character_formula, HighestWeightModule, ModuleError};
use qborch::rmatrix::{self, ProductModule, RMatrixError};
use qborch::scalar::RatFunc;

use crate::report::Check;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Depth(String),
    #[error("{0}")]
    Arguments(String),
    #[error("invalid datum: {0}")]
    Datum(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Depth(_) => 3,
            CliError::Arguments(_) => 4,
            CliError::Datum(_) => 5,
        }
    }
}

impl From<DepthError> for CliError {
    fn from(e: DepthError) -> Self {
        CliError::Depth(format!("{e}; raise --depth"))
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Depth(d) => d.into(),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<ModuleError> for CliError {
    fn from(e: ModuleError) -> Self {
        match e {
            ModuleError::Depth(d) => d.into(),
            ModuleError::NotExhausted(_) => CliError::Depth(format!("{e}; raise --depth")),
            other => CliError::Arguments(other.to_string()),
        }
    }
}

impl From<CenterError> for CliError {
    fn from(e: CenterError) -> Self {
        match e {
            CenterError::Depth(d) => d.into(),
            CenterError::Module(m) => m.into(),
            other => CliError::Arguments(other.to_string()),
        }
    }
}

impl From<RMatrixError> for CliError {
    fn from(e: RMatrixError) -> Self {
        match e {
            RMatrixError::Depth(d) => d.into(),
            RMatrixError::Module(m) => m.into(),
            other => CliError::Depth(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Validate,
    Dims,
    Gram,
    Pair,
    Mul,
    HopfTest,
    Char,
    CenterCheck,
    Hc,
    Flambda,
    Rmat,
    Ybe,
    All,
}

impl Verb {
    pub fn name(self) -> String {
        self.to_possible_value().expect("named verb").get_name().to_string()
    }

    /// Required and optional verb arguments.
    fn arguments(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Verb::Validate | Verb::Dims | Verb::Gram => (&[], &[]),
            Verb::Pair | Verb::Mul => (&["x", "y"], &[]),
            Verb::HopfTest => (&[], &["x"]),
            Verb::Char | Verb::Hc | Verb::Flambda => (&["lambda"], &[]),
            Verb::CenterCheck => (&[], &["lambda"]),
            Verb::Rmat => (&[], &["lambda", "mu"]),
            Verb::Ybe => (&["lambda", "mu", "nu"], &[]),
            Verb::All => (&[], &["lambda"]),
        }
    }
}

/// Raw verb arguments as given on the command line.
#[derive(Debug, Default, Clone)]
pub struct VerbArgs {
    pub lambda: Option<String>,
    pub mu: Option<String>,
    pub nu: Option<String>,
    pub x: Option<String>,
    pub y: Option<String>,
}

impl VerbArgs {
    fn given(&self) -> Vec<&'static str> {
        let all = [("lambda", &self.lambda), ("mu", &self.mu), ("nu", &self.nu), ("x", &self.x), ("y", &self.y)];
        all.iter().filter(|(_, v)| v.is_some()).map(|(k, _)| *k).collect()
    }

    pub fn check_against(&self, verb: Verb) -> Result<(), CliError> {
        let (required, optional) = verb.arguments();
        let given = self.given();
        for r in required {
            if !given.contains(r) {
                return Err(CliError::Arguments(format!("verb {} needs --{r}", verb.name())));
            }
        }
        for g in &given {
            if !required.contains(g) && !optional.contains(g) {
                return Err(CliError::Arguments(format!("verb {} does not take --{g}", verb.name())));
            }
        }
        if verb == Verb::Rmat && self.mu.is_some() != self.lambda.is_some() {
            return Err(CliError::Arguments("verb rmat takes --lambda and --mu together".into()));
        }
        Ok(())
    }
}

/// `h1=1,d1=0` style weights; entries not mentioned are zero.
pub fn parse_weight(d: &Datum, text: &str) -> Result<Weight, CliError> {
    let r = d.rank();
    let mut w = vec![0; 2 * r];
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item.split_once('=').ok_or_else(|| CliError::Parse(format!("weight entry '{item}' has no '='")))?;
        let key = key.trim();
        let offset = match key.chars().next() {
            Some('h') => 0,
            Some('d') => r,
            _ => return Err(CliError::Parse(format!("weight key '{key}' must start with h or d"))),
        };
        let node = d.node_by_name(&key[1..]).ok_or_else(|| CliError::Parse(format!("unknown node in weight key '{key}'")))?;
        w[offset + node] = value.trim().parse().map_err(|_| CliError::Parse(format!("weight value '{value}' is not an integer")))?;
    }
    Ok(w)
}

fn show_root(beta: &[i64]) -> String {
    let parts: Vec<String> = beta.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn show(alg: &Algebra, c: &RatFunc) -> String {
    c.render(alg.datum().root_order())
}

fn show_toral(alg: &Algebra, t: &ToralElement) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = t.iter().map(|(h, c)| format!("({}) {}", show(alg, c), alg.render_coweight(h))).collect();
    terms.join(" + ")
}

fn degree(alg: &Algebra, a: &Elem) -> Vec<i64> {
    alg.degree(a.iter().next().expect("nonzero element").0)
}

/// Passes when `failures` is empty; otherwise names the first failure.
fn tally(name: &str, property: &str, total: usize, failures: Vec<String>) -> Check {
    match failures.first() {
        None => Check::new(name, property, true, format!("{total} cases")),
        Some(first) => Check::new(name, property, false, format!("{} of {total} cases fail, first: {first}", failures.len())),
    }
}

/// Monomials `y q^h x` with at most two letters and `h` from a small window.
fn spanning_set(alg: &Algebra) -> Vec<Elem> {
    let d = alg.datum();
    let n = d.letters().len() as u8;
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    for p in 0..n {
        words.push(vec![p]);
        for q in 0..n {
            words.push(vec![p, q]);
        }
    }
    let mut hs = vec![d.zero_coweight()];
    for c in [0, d.rank()] {
        let mut h = d.zero_coweight();
        h[c] = 1;
        hs.push(h);
    }
    let mut out = Vec::new();
    for y in &words {
        for x in &words {
            if y.len() + x.len() > 2 {
                continue;
            }
            for h in &hs {
                if let Ok(e) = alg.normalize(&RatFunc::one(), y, h, x) {
                    if !e.is_zero() {
                        out.push(e);
                    }
                }
            }
        }
    }
    out
}

pub struct Session<'a> {
    pub alg: &'a Algebra,
    pub depth: usize,
    pub args: VerbArgs,
}

impl Session<'_> {
    fn weight(&self, text: &Option<String>) -> Result<Option<Weight>, CliError> {
        text.as_deref().map(|t| parse_weight(self.alg.datum(), t)).transpose()
    }

    fn element(&self, text: &Option<String>) -> Result<Option<Elem>, CliError> {
        Ok(text.as_deref().map(|t| self.alg.parse(t)).transpose()?)
    }

    fn lambda(&self) -> Result<Weight, CliError> {
        self.weight(&self.args.lambda)?.ok_or_else(|| CliError::Arguments("missing --lambda".into()))
    }

    pub fn run(&self, verb: Verb) -> Result<Vec<Check>, CliError> {
        match verb {
            Verb::Validate => Ok(self.validate()),
            Verb::Dims => self.dims(),
            Verb::Gram => self.gram(),
            Verb::Pair => self.pair(),
            Verb::Mul => self.mul(),
            Verb::HopfTest => self.hopf_test(),
            Verb::Char => self.character(&self.lambda()?),
            Verb::CenterCheck => self.center_check(),
            Verb::Hc => self.hc(&self.lambda()?),
            Verb::Flambda => self.flambda(&self.lambda()?),
            Verb::Rmat => self.rmat(),
            Verb::Ybe => {
                let l = self.lambda()?;
                let m = self.weight(&self.args.mu)?.expect("checked");
                let n = self.weight(&self.args.nu)?.expect("checked");
                self.ybe(&l, &m, &n)
            }
            Verb::All => self.all(),
        }
    }

    fn validate(&self) -> Vec<Check> {
        let d = self.alg.datum();
        let imaginary = (0..d.rank()).filter(|&i| !d.is_real(i)).count();
        let odd = (0..d.rank()).filter(|&i| d.is_odd(i)).count();
        vec![Check::new(
            "datum axioms",
            "symmetrizable colored Borcherds-Cartan datum",
            true,
            format!("rank {}, {} generators per side, {imaginary} imaginary, {odd} odd nodes", d.rank(), d.letters().len()),
        )]
    }

    fn dims(&self) -> Result<Vec<Check>, CliError> {
        let reg = self.alg.registry();
        let mut out = Vec::new();
        for beta in self.alg.datum().roots_up_to(self.depth as i64) {
            let n = reg.dim(&beta)?;
            out.push(Check::value(format!("dim {}", show_root(&beta)), "weight space dimension of either half", n.to_string()));
        }
        Ok(out)
    }

    fn gram(&self) -> Result<Vec<Check>, CliError> {
        let reg = self.alg.registry();
        let mut out = Vec::new();
        for beta in self.alg.datum().roots_up_to(self.depth as i64) {
            let sp = reg.space(&beta)?;
            let det = linalg::determinant(&sp.pivot_pairing());
            out.push(Check::new(
                format!("det {}", show_root(&beta)),
                "pairing nondegenerate on each weight space",
                !det.is_zero(),
                format!("dim {}, det {}", sp.dim(), show(self.alg, &det)),
            ));
        }
        Ok(out)
    }

    fn pair(&self) -> Result<Vec<Check>, CliError> {
        let x = self.element(&self.args.x)?.expect("checked");
        let y = self.element(&self.args.y)?.expect("checked");
        if !self.alg.in_nonnegative_part(&x) {
            return Err(CliError::Arguments("--x must lie in the nonnegative part".into()));
        }
        if !self.alg.in_nonpositive_part(&y) {
            return Err(CliError::Arguments("--y must lie in the nonpositive part".into()));
        }
        let v = self.alg.pair(&x, &y)?;
        Ok(vec![Check::value("pairing", "value of the pairing", show(self.alg, &v))])
    }

    fn mul(&self) -> Result<Vec<Check>, CliError> {
        let x = self.element(&self.args.x)?.expect("checked");
        let y = self.element(&self.args.y)?.expect("checked");
        let p = self.alg.mul(&x, &y)?;
        Ok(vec![Check::value("product", "normal form of the product", self.alg.render(&p))])
    }

    fn hopf_test(&self) -> Result<Vec<Check>, CliError> {
        let a = self.alg;
        let mut elems: Vec<(String, Elem)> = a.generator_elements();
        elems.extend(spanning_set(a).into_iter().map(|e| (a.render(&e), e)));
        if let Some(x) = self.element(&self.args.x)? {
            elems.push((a.render(&x), x));
        }
        let (mut coassoc, mut counit, mut antipode) = (Vec::new(), Vec::new(), Vec::new());
        for (name, x) in &elems {
            let t = a.coproduct(x)?;
            let left = a.expand_leg(&t, 0, |m| a.coproduct_mono(m))?;
            let right = a.expand_leg(&t, 1, |m| a.coproduct_mono(m))?;
            if left != right {
                coassoc.push(name.clone());
            }
            if a.tensor_to_elem(&a.counit_leg(&t, 0)) != *x || a.tensor_to_elem(&a.counit_leg(&t, 1)) != *x {
                counit.push(name.clone());
            }
            let want = a.scalar(a.counit(x));
            let l = a.contract(&a.map_leg(&t, 0, |m| a.antipode_mono(m))?)?;
            let r = a.contract(&a.map_leg(&t, 1, |m| a.antipode_mono(m))?)?;
            if l != want || r != want {
                antipode.push(name.clone());
            }
        }
        Ok(vec![
            tally("coassociativity", "coproduct is coassociative", elems.len(), coassoc),
            tally("counit", "counit axiom", elems.len(), counit),
            tally("antipode", "antipode axiom", elems.len(), antipode),
        ])
    }

    fn character(&self, lambda: &[i64]) -> Result<Vec<Check>, CliError> {
        let formula = character_formula(self.alg, lambda, self.depth)?;
        let module = HighestWeightModule::irreducible(self.alg, lambda, self.depth)?.dims();
        let keys: BTreeSet<&Root> = formula.keys().chain(module.keys()).collect();
        let mut out = Vec::new();
        for beta in keys {
            let f = formula.get(beta).copied().unwrap_or(0);
            let m = module.get(beta).copied().unwrap_or(0) as i64;
            out.push(Check::new(
                format!("multiplicity at lambda-{}", show_root(beta)),
                "character formula agrees with the constructed irreducible module",
                f == m,
                format!("formula {f}, module {m}"),
            ));
        }
        Ok(out)
    }

    /// The single node of a rank-one datum with one generator per side.
    fn rank_one_variant(&self) -> Option<CasimirVariant> {
        let d = self.alg.datum();
        if d.rank() != 1 || d.letters().len() != 1 {
            return None;
        }
        match (d.a(0, 0) != 0, d.is_odd(0)) {
            (true, false) => Some(CasimirVariant::Even),
            (true, true) => Some(CasimirVariant::Odd),
            (false, true) => {
                let h = (0..2).map(|c| {
                    let mut h = d.zero_coweight();
                    h[c] = 1;
                    h
                });
                h.into_iter().find(|h| d.simple_eval(0, h) != 0).map(CasimirVariant::IsotropicOdd)
            }
            (false, false) => None,
        }
    }

    fn center_check(&self) -> Result<Vec<Check>, CliError> {
        let variant = self.rank_one_variant().ok_or_else(|| {
            CliError::Arguments("center-check needs a rank-one datum whose node carries a quadratic central element".into())
        })?;
        let a = self.alg;
        let c = center::casimir_rank1(a, 0, &variant)?;
        let t = center::harish_chandra(a, &c);
        let report = center::check_image_constraints(a.datum(), &t);
        let mut out = vec![
            Check::new("quadratic element is central", "commutes with every generator", center::is_central(a, &c)?, a.render(&c)),
            Check::value("Cartan image", "image of the quadratic central element", show_toral(a, &t)),
            Check::new("image is Weyl invariant", "image invariant under the shifted Weyl action", report.weyl_invariant, ""),
            Check::new("image is restricted", "image lies in the restricted toral subalgebra", report.restricted, ""),
        ];
        // powers as far as the depth allows
        let mut power = a.one();
        let mut images = vec![center::harish_chandra(a, &power)];
        for _ in 1..=3 {
            match a.mul(&power, &c) {
                Ok(p) => power = p,
                Err(_) => break,
            }
            images.push(center::harish_chandra(a, &power));
        }
        let mut support: Vec<_> = images.iter().flat_map(|t| t.iter().map(|(h, _)| h.clone())).collect();
        support.sort();
        support.dedup();
        let m: Vec<Vec<RatFunc>> = images.iter().map(|t| support.iter().map(|h| t.coefficient(h)).collect()).collect();
        out.push(Check::new(
            "powers have independent images",
            "projection injective on the powers",
            linalg::rank(&m) == images.len(),
            format!("powers 0..={}", images.len() - 1),
        ));
        let lambdas = match self.weight(&self.args.lambda)? {
            Some(l) => vec![l],
            None => [0, 1, 3]
                .iter()
                .map(|&h| {
                    let mut w = vec![0; 2];
                    w[0] = h;
                    w
                })
                .collect(),
        };
        let rho = a.datum().rho();
        for lambda in lambdas {
            let verma = HighestWeightModule::verma(a, &lambda, self.depth.min(1))?;
            let v = verma.apply(&c, &a.datum().zero_root(), &[RatFunc::one()])?;
            let scalar = v.get(&a.datum().zero_root()).map(|v| v[0].clone()).unwrap_or_else(RatFunc::zero);
            let shifted: Vec<i64> = lambda.iter().zip(&rho).map(|(x, y)| x + y).collect();
            let chi = t.chi(a, &shifted);
            out.push(Check::new(
                format!("highest weight scalar at {}", show_root(&lambda)),
                "central element acts by the shifted character of its image",
                scalar == chi,
                show(a, &scalar),
            ));
        }
        Ok(out)
    }

    fn hc(&self, lambda: &[i64]) -> Result<Vec<Check>, CliError> {
        let t = center::xi_z_lambda(self.alg, lambda, self.depth)?;
        let report = center::check_image_constraints(self.alg.datum(), &t);
        Ok(vec![
            Check::value("Cartan image", "image of the central element built from the trace functional", show_toral(self.alg, &t)),
            Check::new("image is Weyl invariant", "image invariant under the shifted Weyl action", report.weyl_invariant, ""),
            Check::new("image is restricted", "image lies in the restricted toral subalgebra", report.restricted, ""),
        ])
    }

    fn flambda(&self, lambda: &[i64]) -> Result<Vec<Check>, CliError> {
        let a = self.alg;
        let v = HighestWeightModule::irreducible(a, lambda, self.depth)?;
        let at_one = center::f_lambda(a, &v, &a.one())?;
        let mut total = 0;
        let mut failures = Vec::new();
        for u in spanning_set(a) {
            let du = degree(a, &u);
            let base = center::f_lambda(a, &v, &u)?;
            for (gname, x) in a.generator_elements() {
                let dx = degree(a, &x);
                let lhs = center::f_lambda(a, &v, &a.ad(&x, &u)?)?.scale_int(a.theta(&du, &dx));
                if lhs != &a.counit(&x) * &base {
                    failures.push(format!("x={gname} u={}", a.render(&u)));
                }
                total += 1;
            }
        }
        Ok(vec![
            Check::value("value at 1", "trace functional at the identity", show(a, &at_one)),
            tally("adjoint invariance", "trace functional is invariant under the adjoint action", total, failures),
        ])
    }

    fn rmat(&self) -> Result<Vec<Check>, CliError> {
        let a = self.alg;
        // the identities at height k reach height k + 1
        let small = self.depth.saturating_sub(1).min(3);
        let mut failures = Vec::new();
        let mut total = 0;
        for beta in a.datum().roots_up_to(small as i64) {
            for (i, k) in a.generators() {
                let r = rmatrix::canonical_identities(a, &beta, i, k)?;
                if !r.all() {
                    failures.push(format!("{} at generator {i},{k}: {r:?}", show_root(&beta)));
                }
                total += 1;
            }
        }
        let c = rmatrix::quasi_r(a, self.depth)?;
        let cp = rmatrix::quasi_r_inverse(a, self.depth)?;
        let rep = rmatrix::pretriangular_report(a, small)?;
        let prop = "quasi-R-matrix relations";
        let mut out = vec![
            tally("canonical element identities", "identities of the weight components of the canonical element", total, failures),
            Check::new("quasi-R-matrix inverse", "C C' = C' C = 1", rmatrix::check_inverse(a, &c, &cp)?, format!("to height {}", self.depth)),
            Check::new("intertwining", prop, rep.intertwining, format!("to height {small}")),
            Check::new("twist fixes leg 12", prop, rep.phi_fixes_first, format!("to height {small}")),
            Check::new("twist fixes leg 23", prop, rep.phi_fixes_last, format!("to height {small}")),
            Check::new("coproduct on the left leg", prop, rep.coproduct_left, format!("to height {small}")),
            Check::new("coproduct on the right leg", prop, rep.coproduct_right, format!("to height {small}")),
        ];
        if let (Some(l), Some(m)) = (self.weight(&self.args.lambda)?, self.weight(&self.args.mu)?) {
            out.extend(self.module_r(&l, &m)?);
        }
        Ok(out)
    }

    fn module_r(&self, lambda: &[i64], mu: &[i64]) -> Result<Vec<Check>, CliError> {
        let v = HighestWeightModule::irreducible(self.alg, lambda, self.depth)?;
        let w = HighestWeightModule::irreducible(self.alg, mu, self.depth)?;
        let r = rmatrix::r_operator(&v, &w, self.depth)?;
        let nonzero = r.matrix.iter().flatten().filter(|x| !x.is_zero()).count();
        let n = r.basis.len();
        Ok(vec![
            Check::value("R on the product", "R operator on the truncated product module", format!("dimension {n}, {nonzero} nonzero entries")),
            Check::new("R intertwines", "R is a module map onto the flipped product", rmatrix::check_intertwining(&v, &w, self.depth)?, ""),
            Check::new("R invertible", "R times its inverse is the identity", rmatrix::check_r_invertible(&v, &w, self.depth)?, ""),
        ])
    }

    fn ybe(&self, l: &[i64], m: &[i64], n: &[i64]) -> Result<Vec<Check>, CliError> {
        let v1 = HighestWeightModule::irreducible(self.alg, l, self.depth)?;
        let v2 = HighestWeightModule::irreducible(self.alg, m, self.depth)?;
        let v3 = HighestWeightModule::irreducible(self.alg, n, self.depth)?;
        let p = ProductModule::new(vec![&v1, &v2, &v3], self.depth)?;
        let r12 = p.r_matrix(0, 1)?;
        let r13 = p.r_matrix(0, 2)?;
        let r23 = p.r_matrix(1, 2)?;
        let lhs = linalg::mat_mul(&linalg::mat_mul(&r12, &r13), &r23);
        let rhs = linalg::mat_mul(&linalg::mat_mul(&r23, &r13), &r12);
        let bad = lhs.iter().flatten().zip(rhs.iter().flatten()).filter(|(x, y)| x != y).count();
        let dim = p.dim();
        Ok(vec![Check::new(
            "Yang-Baxter equation",
            "R12 R13 R23 = R23 R13 R12",
            bad == 0,
            format!("{bad} nonzero residual entries / {}", dim * dim),
        )])
    }

    fn all(&self) -> Result<Vec<Check>, CliError> {
        let mut out = Vec::new();
        let mut add = |verb: Verb, checks: Vec<Check>| {
            for mut c in checks {
                c.name = format!("{}: {}", verb.name(), c.name);
                out.push(c);
            }
        };
        add(Verb::Validate, self.validate());
        add(Verb::Gram, self.gram()?);
        add(Verb::HopfTest, self.hopf_test()?);
        if self.rank_one_variant().is_some() {
            add(Verb::CenterCheck, self.center_check()?);
        }
        let plain = Session { alg: self.alg, depth: self.depth, args: VerbArgs::default() };
        add(Verb::Rmat, plain.rmat()?);
        if let Some(l) = self.weight(&self.args.lambda)? {
            add(Verb::Char, self.character(&l)?);
            if self.alg.datum().is_finite_type() {
                add(Verb::Flambda, self.flambda(&l)?);
                match self.hc(&l) {
                    Err(CliError::Arguments(_)) => {}
                    other => add(Verb::Hc, other?),
                }
            }
            add(Verb::Rmat, self.module_r(&l, &l)?);
            add(Verb::Ybe, self.ybe(&l, &l, &l)?);
        }
        Ok(out)
    }
}
