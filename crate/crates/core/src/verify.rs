//! Named verification suites. Each suite compares a construction with an
//! independent computation and reports one entry per check.
//!
//! Reports contain no timings or other run-dependent data, so two runs with
//! the same configuration serialize to identical JSON.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::automata::{compile, Alphabet, Dfa, Letter, Nfa, NfaBuilder, Word, DEFAULT_STATE_CAP};
use crate::boolmat::{bn_index, bn_monoid, iterated_product, path_exists, BoolMatrix};
use crate::error::{Error, Result};
use crate::mso::{self, Bounds, Formula};
use crate::picture::{
    embed_bn, shipped_toys, verify_semexists, witness_l, witness_l0, witness_l7, AttributeSet,
    LengthFunction, Repairs,
};
use crate::semigroup::{
    bilateral_semidirect, canonical_map, check_homomorphism, cyclic, is_aperiodic, maximal_groups,
    monogenic_action_pairs, small_aperiodic, syntactic_monoid, syntactic_quotient,
    transition_monoid_lazy, u1, Generated, MonoidView, Transformation, DEFAULT_MONOID_CAP,
};

/// Suite names in the order `all` runs them.
pub const SUITES: [&str; 11] = [
    "matmult",
    "synmon",
    "recdivide",
    "dividebn",
    "disjunction",
    "doublestar",
    "cbn",
    "upperbound0",
    "witness",
    "semexists",
    "mso",
];

/// Parameters shared by all suites.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub state_cap: usize,
    pub monoid_cap: usize,
    /// Word length for the block-product comparison.
    pub max_len: usize,
    /// Random matrix tuples per length for `n = 3`.
    pub random_tuples: usize,
    /// Random automata for the recognizer checks.
    pub random_nfas: usize,
    /// Largest picture for the set and position quantifier checks.
    pub max_cells: usize,
    pub set_cap: usize,
    /// `(n, m)`: matrix dimension and fragment height.
    pub cells: Vec<(usize, usize)>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 20240601,
            state_cap: DEFAULT_STATE_CAP,
            monoid_cap: DEFAULT_MONOID_CAP,
            max_len: 6,
            random_tuples: 1000,
            random_nfas: 60,
            max_cells: 8,
            set_cap: mso::DEFAULT_SET_CAP,
            cells: vec![(1, 1), (2, 1), (1, 2), (2, 2)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: Value) -> Self {
        Check {
            name: name.into(),
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<Check>) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let checks = match name {
        "matmult" => matmult(cfg)?,
        "synmon" => synmon(cfg)?,
        "recdivide" => recdivide(cfg)?,
        "dividebn" => dividebn(cfg)?,
        "disjunction" => disjunction(cfg)?,
        "doublestar" => doublestar(cfg)?,
        "cbn" => cbn()?,
        "upperbound0" => upperbound0(cfg)?,
        "witness" => witness(cfg)?,
        "semexists" => semexists(cfg)?,
        "mso" => mso_suite(cfg)?,
        other => {
            return Err(Error::Invalid(format!(
                "unknown suite `{other}` (expected one of {} or all)",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport::new(name, checks))
}

/// Runs every suite in [`SUITES`] order.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, cfg)).collect()
}

fn rng(cfg: &VerifyConfig, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(cfg.seed);
    r.set_stream(stream);
    r
}

fn all_matrices(n: usize) -> Vec<BoolMatrix> {
    (0..1usize << (n * n))
        .map(|k| crate::boolmat::bn_element(n, k))
        .collect()
}

fn random_matrix(n: usize, r: &mut ChaCha8Rng) -> BoolMatrix {
    // sparse enough that zero products are common
    BoolMatrix::from_fn(n, |_, _| r.gen_bool(0.35))
}

fn matmult(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in [1, 2] {
        let mats = all_matrices(n);
        let (mut tuples, mut failures) = (0usize, Vec::new());
        for len in 0..=3u32 {
            let total = mats.len().pow(len);
            for code in 0..total {
                let mut c = code;
                let tuple: Vec<BoolMatrix> = (0..len)
                    .map(|_| {
                        let m = mats[c % mats.len()].clone();
                        c /= mats.len();
                        m
                    })
                    .collect();
                tuples += 1;
                if iterated_product(&tuple, n)?.is_zero() == path_exists(&tuple, n)? {
                    failures.push(tuple.iter().map(BoolMatrix::rows).collect::<Vec<_>>());
                }
            }
        }
        checks.push(Check::new(
            format!("exhaustive n={n}"),
            failures.is_empty(),
            json!({"n": n, "lengths": "0..=3", "tuples": tuples, "failures": failures.len(), "first_failure": failures.first()}),
        ));
    }
    let mut r = rng(cfg, 1);
    let n = 3;
    for len in 0..=3 {
        let mut failures = Vec::new();
        let mut zero = 0;
        for _ in 0..cfg.random_tuples {
            let tuple: Vec<BoolMatrix> = (0..len).map(|_| random_matrix(n, &mut r)).collect();
            let z = iterated_product(&tuple, n)?.is_zero();
            zero += z as usize;
            if z == path_exists(&tuple, n)? {
                failures.push(tuple.iter().map(BoolMatrix::rows).collect::<Vec<_>>());
            }
        }
        checks.push(Check::new(
            format!("random n=3 length={len}"),
            failures.is_empty(),
            json!({"n": n, "length": len, "tuples": cfg.random_tuples, "zero_products": zero, "failures": failures.len(), "first_failure": failures.first()}),
        ));
    }
    Ok(checks)
}

fn words_up_to(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for a in 0..k as Letter {
                let mut v: Word = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Classes of the words of length at most `max_len` under the two-sided
/// context congruence of `member`, with contexts of length at most
/// `ctx_len`. Class ids are numbered by first occurrence.
pub fn word_congruence(
    member: impl Fn(&[Letter]) -> bool,
    k: usize,
    max_len: usize,
    ctx_len: usize,
) -> (Vec<Word>, Vec<u32>) {
    let words = words_up_to(k, max_len);
    let ctx = words_up_to(k, ctx_len);
    let mut sigs: Vec<Vec<bool>> = Vec::with_capacity(words.len());
    for w in &words {
        let mut sig = Vec::with_capacity(ctx.len() * ctx.len());
        for u in &ctx {
            for v in &ctx {
                let mut x = u.clone();
                x.extend_from_slice(w);
                x.extend_from_slice(v);
                sig.push(member(&x));
            }
        }
        sigs.push(sig);
    }
    let mut ids: Vec<Vec<bool>> = Vec::new();
    let class = sigs
        .into_iter()
        .map(|s| match ids.iter().position(|t| *t == s) {
            Some(i) => i as u32,
            None => {
                ids.push(s);
                (ids.len() - 1) as u32
            }
        })
        .collect();
    (words, class)
}

fn synmon(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let cases: [(&str, &[&str], usize, bool); 2] =
        [("(aa)*", &["a"], 2, false), ("a*b*", &["a", "b"], 5, true)];
    let mut checks = Vec::new();
    for (re, labels, size, aperiodic) in cases {
        let alphabet = Alphabet::with_labels(labels.iter().copied())?;
        let nfa = compile(re, &alphabet)?;
        let m = syntactic_monoid(&nfa.minimal_dfa(cfg.state_cap)?, cfg.monoid_cap)?;
        let (words, oracle) = word_congruence(|w| nfa.accepts(w), alphabet.size(), 4, 4);
        let image: Vec<u32> = words.iter().map(|w| m.eval(w).expect("letters")).collect();
        // same partition of the words: equal images iff equal oracle classes
        let mut mismatch = None;
        'outer: for i in 0..words.len() {
            for j in 0..i {
                if (image[i] == image[j]) != (oracle[i] == oracle[j]) {
                    mismatch = Some(format!(
                        "{} / {}",
                        alphabet.format_word(&words[i]),
                        alphabet.format_word(&words[j])
                    ));
                    break 'outer;
                }
            }
        }
        let classes = oracle.iter().max().map_or(0, |&c| c as usize + 1);
        let ap = is_aperiodic(&m);
        checks.push(Check::new(
            format!("syntactic monoid of {re}"),
            m.size() == size && ap == aperiodic && classes == size && mismatch.is_none(),
            json!({
                "language": re,
                "size": m.size(),
                "expected_size": size,
                "aperiodic": ap,
                "expected_aperiodic": aperiodic,
                "oracle_words": words.len(),
                "oracle_classes": classes,
                "class_mismatch": mismatch,
            }),
        ));
    }
    Ok(checks)
}

/// A random automaton with `1..=max_states` states over `1..=max_letters`
/// letters.
pub fn random_nfa(r: &mut ChaCha8Rng, max_states: usize, max_letters: usize) -> Result<Nfa> {
    let q = r.gen_range(1..=max_states);
    let k = r.gen_range(1..=max_letters);
    let mut b = NfaBuilder::new(Alphabet::new(k)?);
    let states = b.add_states(q);
    for s in states.clone() {
        if r.gen_bool(0.4) {
            b.set_final(s, true);
        }
        for a in 0..k as Letter {
            for t in states.clone() {
                if r.gen_bool(0.35) {
                    b.add_transition(s, a, t);
                }
            }
        }
    }
    b.set_initial(0);
    for s in 1..q as u32 {
        if r.gen_bool(0.2) {
            b.set_initial(s);
        }
    }
    b.build()
}

fn describe_nfa(nfa: &Nfa) -> Value {
    serde_json::to_value(nfa.to_json()).unwrap_or(Value::Null)
}

fn recdivide(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut r = rng(cfg, 2);
    let (mut failures, mut sizes) = (Vec::new(), Vec::new());
    for i in 0..cfg.random_nfas {
        let nfa = random_nfa(&mut r, 4, 3)?;
        let tm = transition_monoid_lazy(&nfa, cfg.monoid_cap)?;
        let accept = tm
            .accepting()
            .expect("transition monoid carries its accepting set")
            .to_vec();
        let (q, _) = syntactic_quotient(&tm, &accept)?;
        let sm = syntactic_monoid(&nfa.minimal_dfa(cfg.state_cap)?, cfg.monoid_cap)?;
        let map = canonical_map(&q, &sm)?;
        let hom = check_homomorphism(&map, &q, &sm);
        let accept_agrees = (0..q.size())
            .all(|x| q.accept().map(|a| a[x]) == sm.accept().map(|a| a[map[x] as usize]));
        sizes.push((tm.size(), q.size()));
        if !(hom.is_isomorphism(q.size(), sm.size()) && accept_agrees) {
            failures.push(json!({"index": i, "nfa": describe_nfa(&nfa), "quotient": q.size(), "syntactic": sm.size(), "hom": hom}));
        }
    }
    let largest = sizes.iter().map(|s| s.0).max().unwrap_or(0);
    Ok(vec![Check::new(
        "quotient of transition monoid is the syntactic monoid",
        failures.is_empty() && cfg.random_nfas >= 50,
        json!({
            "automata": cfg.random_nfas,
            "max_states": 4,
            "max_letters": 3,
            "largest_transition_monoid": largest,
            "failures": failures.len(),
            "first_failure": failures.first(),
        }),
    )])
}

fn dividebn(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut r = rng(cfg, 3);
    let bns: Vec<_> = (1..=3)
        .map(|n| bn_monoid(n, 1 << 10))
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for i in 0..cfg.random_nfas {
        let nfa = random_nfa(&mut r, 3, 3)?;
        let n = nfa.states().max(1);
        let tm = transition_monoid_lazy(&nfa, cfg.monoid_cap)?;
        let dims_ok = tm.elements().iter().all(|x| x.n() == n);
        // inclusion into B_n, then the syntactic quotient on top
        let ok = dims_ok && nfa.states() >= 1 && {
            let map: Vec<u32> = tm.elements().iter().map(|x| bn_index(x) as u32).collect();
            let bn = &bns[n - 1];
            let inc = check_homomorphism(&map, &tm, bn);
            let accept = tm.accepting().expect("accepting set").to_vec();
            let (q, proj) = syntactic_quotient(&tm, &accept)?;
            let onto = check_homomorphism(&proj, &tm, &q);
            inc.multiplicative && inc.injective && inc.identity_preserving && onto.multiplicative
        };
        if !ok {
            failures.push(json!({"index": i, "nfa": describe_nfa(&nfa)}));
        }
    }
    Ok(vec![Check::new(
        "transition monoid embeds in B_n and maps onto the syntactic monoid",
        failures.is_empty(),
        json!({"automata": cfg.random_nfas, "max_states": 3, "failures": failures.len(), "first_failure": failures.first()}),
    )])
}

/// Each letter acts on the disjoint union of the states of `d1` and `d2`,
/// the states of `d2` shifted past those of `d1`.
fn union_letters(d1: &Dfa, d2: &Dfa) -> Vec<Transformation> {
    let s1 = d1.states() as u32;
    (0..d1.alphabet().size() as Letter)
        .map(|a| {
            let left = (0..s1).map(|q| d1.next(q, a));
            let right = (0..d2.states() as u32).map(|q| s1 + d2.next(q, a));
            Transformation(left.chain(right).collect())
        })
        .collect()
}

fn disjunction(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let alphabet = Alphabet::with_labels(["a", "b"])?;
    let pairs = [
        ("a*b*", "(aa)*"),
        ("(a|b)*a", "b(a|b)*"),
        ("(ab)*", "a*"),
        ("(a|b)*aa(a|b)*", "(b|ab)*"),
    ];
    let mut checks = Vec::new();
    for (l1, l2) in pairs {
        let n1 = compile(l1, &alphabet)?;
        let n2 = compile(l2, &alphabet)?;
        let d1 = n1.minimal_dfa(cfg.state_cap)?;
        let d2 = n2.minimal_dfa(cfg.state_cap)?;
        let s1 = d1.states() as u32;
        let total = d1.states() + d2.states();
        let letters = union_letters(&d1, &d2);
        let mut prod = Generated::from_letters(
            Transformation::identity(total),
            &alphabet,
            &letters,
            cfg.monoid_cap,
        )?;
        let (i1, i2) = (d1.initial(), s1 + d2.initial());
        prod.set_accept(|t| d1.is_final(t.apply(i1)) || d2.is_final(t.apply(i2) - s1));
        let accept = prod.accepting().expect("accepting set").to_vec();
        let (q, _) = syntactic_quotient(&prod, &accept)?;
        let union = n1.union(&n2)?.minimal_dfa(cfg.state_cap)?;
        let mu = syntactic_monoid(&union, cfg.monoid_cap)?;
        let map = canonical_map(&q, &mu)?;
        let hom = check_homomorphism(&map, &q, &mu);
        let sm1 = syntactic_monoid(&d1, cfg.monoid_cap)?.size();
        let sm2 = syntactic_monoid(&d2, cfg.monoid_cap)?.size();
        checks.push(Check::new(
            format!("{l1} or {l2}"),
            hom.is_isomorphism(q.size(), mu.size()) && prod.size() <= sm1 * sm2,
            json!({
                "left_monoid": sm1,
                "right_monoid": sm2,
                "generated_in_product": prod.size(),
                "quotient": q.size(),
                "union_monoid": mu.size(),
                "hom": hom,
            }),
        ));
    }
    Ok(checks)
}

fn doublestar(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let _ = cfg;
    let ts = [("Z2", cyclic(2)?), ("Z3", cyclic(3)?), ("U1", u1())];
    let mut checks = Vec::new();
    for (sname, s) in small_aperiodic()? {
        for (tname, t) in &ts {
            let pairs = monogenic_action_pairs(&s, t)?;
            let nt = t.size() as u32;
            let (mut groups, mut largest, mut failure) = (0usize, 0usize, None);
            for (k, pair) in pairs.iter().enumerate() {
                let w = bilateral_semidirect(&s, t, pair, 1 << 12)?;
                for g in maximal_groups(&w) {
                    groups += 1;
                    largest = largest.max(g.order());
                    let mut proj: Vec<u32> = g.elements.iter().map(|x| x % nt).collect();
                    proj.sort_unstable();
                    proj.dedup();
                    if proj.len() != g.order() && failure.is_none() {
                        failure = Some(
                            json!({"pair": k, "idempotent": g.idempotent, "elements": g.elements}),
                        );
                    }
                }
            }
            checks.push(Check::new(
                format!("{sname} ** {tname}"),
                failure.is_none() && !pairs.is_empty(),
                json!({"s_size": s.size(), "action_pairs": pairs.len(), "groups": groups, "largest_group": largest, "failure": failure}),
            ));
        }
    }
    Ok(checks)
}

fn cbn() -> Result<Vec<Check>> {
    let b1 = bn_monoid(1, 1 << 4)?;
    let b2 = bn_monoid(2, 1 << 4)?;
    let groups2: Vec<usize> = maximal_groups(&b2).iter().map(|g| g.order()).collect();
    let at_identity = maximal_groups(&b2)
        .iter()
        .find(|g| g.idempotent == b2.identity())
        .map_or(0, |g| g.order());
    Ok(vec![
        Check::new(
            "B_1 is aperiodic",
            is_aperiodic(&b1),
            json!({"size": b1.size()}),
        ),
        Check::new(
            "B_2 contains a group of order 2",
            groups2.contains(&2) && at_identity == 2,
            json!({"group_orders": groups2, "units": at_identity}),
        ),
        Check::new(
            "|B_n| = 2^(n^2)",
            b1.size() == 2 && b2.size() == 16,
            json!({"b1": b1.size(), "b2": b2.size()}),
        ),
    ])
}

fn upperbound0(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for &(n, m) in &cfg.cells {
        let f = LengthFunction::constant(n, 1..=m);
        let rep = embed_bn(&f, m, cfg.state_cap, cfg.monoid_cap)?;
        checks.push(Check::new(
            format!("B_{n} into height {m}"),
            rep.is_embedding() && rep.image_size == 1 << (n * n),
            serde_json::to_value(&rep).unwrap_or(Value::Null),
        ));
    }
    Ok(checks)
}

fn witness(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for &(n, m) in &cfg.cells {
        let f = LengthFunction::constant(n, 1..=m);
        let builds = [
            ("markers", witness_l0(&f, m, Repairs::all(), cfg.state_cap)?),
            ("pivots", witness_l7(&f, m, Repairs::all(), cfg.state_cap)?),
            ("product", witness_l(&f, m, Repairs::all(), cfg.state_cap)?),
        ];
        for (name, w) in builds {
            let cex = w.counterexample(cfg.state_cap)?;
            checks.push(Check::new(
                format!("{name} n={n} m={m}"),
                cex.is_none(),
                json!({
                    "n": n,
                    "m": m,
                    "attributes": w.col.attrs().names(),
                    "compositional_states": w.compositional.nfa().states(),
                    "oracle_states": w.oracle.states(),
                    "counterexample": cex.map(|x| w.col.format_word(&x)),
                }),
            ));
        }
    }
    Ok(checks)
}

fn semexists(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for toy in shipped_toys()? {
        let rep = verify_semexists(
            toy.mu,
            &toy.lang,
            cfg.max_len,
            cfg.state_cap,
            cfg.monoid_cap,
            1 << 24,
        )?;
        checks.push(Check::new(
            toy.name,
            rep.passed(),
            serde_json::to_value(&rep).unwrap_or(Value::Null),
        ));
    }
    Ok(checks)
}

fn outcome(o: mso::CheckOutcome) -> Check {
    let passed = o.passed();
    Check::new(
        o.name,
        passed,
        json!({"cases": o.cases, "counterexample": o.counterexample}),
    )
}

fn mso_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let small = Bounds::rect(2, 3);
    let big = Bounds::cells(cfg.max_cells);
    let a = AttributeSet::new(["a"])?;
    let mu_a = AttributeSet::new(["mu", "a"])?;
    let mut checks = vec![outcome(mso::check_order(small, cfg.set_cap)?)];
    for t in mso::RELATIVIZATION_FORMULAS {
        let phi = Formula::parse(t)?;
        checks.push(outcome(mso::check_relativization(
            &phi,
            &a,
            small,
            cfg.set_cap,
        )?));
        checks.push(outcome(mso::check_interval(&phi, &a, small, cfg.set_cap)?));
    }
    for t in mso::SET_FORMULAS {
        checks.push(outcome(mso::check_exists_set(
            &Formula::parse(t)?,
            "mu",
            &mu_a,
            big,
            cfg.set_cap,
        )?));
    }
    for t in mso::POSITION_FORMULAS {
        checks.push(outcome(mso::check_position_exists(
            &Formula::parse(t)?,
            "mu",
            &mu_a,
            big,
            cfg.set_cap,
        )?));
    }
    for re in mso::TOP_ROW_EXPRESSIONS {
        checks.push(outcome(mso::check_topreg(re, &a, small, cfg.set_cap)?));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn congruence_oracle_on_known_languages() {
        let a = Alphabet::with_labels(["a"]).unwrap();
        let even = compile("(aa)*", &a).unwrap();
        let (words, class) = word_congruence(|w| even.accepts(w), 1, 4, 4);
        assert_eq!(words.len(), 5);
        assert_eq!(class, vec![0, 1, 0, 1, 0]);
    }

    #[test]
    fn cheap_suites_pass() {
        let cfg = VerifyConfig {
            random_tuples: 50,
            random_nfas: 50,
            ..VerifyConfig::default()
        };
        for s in [
            "matmult",
            "synmon",
            "recdivide",
            "dividebn",
            "disjunction",
            "doublestar",
            "cbn",
        ] {
            let rep = run_suite(s, &cfg).unwrap();
            assert!(rep.passed, "{s}: {:?}", rep.failures());
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            run_suite("nope", &VerifyConfig::default()),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn random_automata_are_reproducible() {
        let cfg = VerifyConfig::default();
        let a: Vec<_> = (0..5)
            .map(|_| 0)
            .scan(rng(&cfg, 2), |r, _| {
                Some(random_nfa(r, 4, 3).unwrap().to_json())
            })
            .collect();
        let b: Vec<_> = (0..5)
            .map(|_| 0)
            .scan(rng(&cfg, 2), |r, _| {
                Some(random_nfa(r, 4, 3).unwrap().to_json())
            })
            .collect();
        assert_eq!(a, b);
    }
}
