//! The subcommands, as functions returning reports.

use serde_json::{json, Map, Value};
use tsring_core::blocks::{
    block_iso_0, block_iso_i, central_decomposition, rational_central_idempotent_scan, semisimplicity_decide,
    theorem_c_decomposition, Decision, SemisimplicityCertificate,
};
use tsring_core::cartan::{
    cartan_matrix, centrality_check_pr_identity, certify_family, epsilon_family, family_is_certified,
    integrality_criterion, maximality_ranks, pr_identity_over_k, theorem_a_idempotents, FieldMatrixIso,
};
use tsring_core::exactarith::{snf, PrimeField, Rationals, ScalarField};
use tsring_core::groupmodel::laws;
use tsring_core::mackey::{check_representative_independence, check_table};
use tsring_core::{Error, ModelParams, Strategy, TRing};

use crate::report::{basis_json, element_json, int, terms_json, Report, Status};
use crate::CliError;

/// Coefficient field given on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FieldSpec {
    Q,
    F(u64),
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Q);
        }
        let q: u64 = s
            .strip_prefix('F')
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| CliError::Usage(format!("field {s:?} is neither Q nor F<q>")))?;
        PrimeField::new(q)?;
        Ok(FieldSpec::F(q))
    }

    pub fn parse_list(s: &str) -> Result<Vec<Self>, CliError> {
        s.split(',').map(Self::parse).collect()
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Q => 0,
            FieldSpec::F(q) => q,
        }
    }

    pub fn name(self) -> String {
        match self {
            FieldSpec::Q => "Q".into(),
            FieldSpec::F(q) => format!("F{q}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Oracle,
    Assoc,
    TheoremA,
    TheoremB,
    TheoremC,
    TheoremD,
    Semisimple,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Oracle,
        Check::Assoc,
        Check::TheoremA,
        Check::TheoremB,
        Check::TheoremC,
        Check::TheoremD,
        Check::Semisimple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Oracle => "oracle",
            Check::Assoc => "assoc",
            Check::TheoremA => "theorem-a",
            Check::TheoremB => "theorem-b",
            Check::TheoremC => "theorem-c",
            Check::TheoremD => "theorem-d",
            Check::Semisimple => "semisimple",
        }
    }

    pub fn parse_list(s: &str) -> Result<Vec<Self>, CliError> {
        let mut out = Vec::new();
        for part in s.split(',') {
            let c = Self::ALL
                .into_iter()
                .find(|c| c.name() == part.trim())
                .ok_or_else(|| CliError::Usage(format!("unknown check {part:?}")))?;
            out.push(c);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub which: Vec<Check>,
    pub fields: Vec<FieldSpec>,
    pub scan_bound: usize,
    pub strategy: Strategy,
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::NotPrime(_)
            | Error::BadOrder { .. }
            | Error::TwoBlocked(_)
            | Error::ZeroExponent
            | Error::TooLarge { .. }
            | Error::BadLevel { .. }
            | Error::CharIsP(_)
    )
}

pub fn cmd_basis(params: ModelParams) -> Report {
    let ring = TRing::new(params);
    let mut r = Report::new("basis", params);
    r.payload = json!({
        "rank": int(ring.rank()),
        "basis": ring.basis().iter().map(basis_json).collect::<Vec<_>>(),
    });
    r.count("basis_elements", ring.rank());
    r
}

/// One row per ordered basis pair.
pub fn table_rows(ring: &TRing) -> Vec<Value> {
    let basis = ring.basis();
    let mut rows = Vec::with_capacity(basis.len() * basis.len());
    for a in basis {
        for b in basis {
            let x = ring.mult_basis(a, b).expect("basis elements of this ring");
            rows.push(json!({ "a": basis_json(a), "b": basis_json(b), "product": element_json(&x) }));
        }
    }
    rows
}

pub fn cmd_table(params: ModelParams, strategy: Strategy) -> Report {
    let ring = TRing::with_strategy(params, strategy);
    let mut r = Report::new("table", params);
    let rows = table_rows(&ring);
    r.count("rows", rows.len());
    r.payload = json!({ "rows": rows });
    r
}

/// CSV table: `a,b,product` with products written `label:coeff;…`.
pub fn table_csv(params: ModelParams, strategy: Strategy) -> Result<String, CliError> {
    let ring = TRing::with_strategy(params, strategy);
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(["a", "b", "product"])?;
    for a in ring.basis() {
        for b in ring.basis() {
            let x = ring.mult_basis(a, b)?;
            let terms: Vec<String> = x.render_terms().iter().map(|(c, k)| format!("{c}:{k}")).collect();
            w.write_record([a.to_string(), b.to_string(), terms.join(";")])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

/// Result of one section: payload, status and counters.
struct Section {
    payload: Value,
    status: Status,
    counters: Vec<(String, usize)>,
}

impl Section {
    fn ok(payload: Value) -> Self {
        Self { payload, status: Status::Ok, counters: Vec::new() }
    }

    fn counted(mut self, key: &str, n: usize) -> Self {
        self.counters.push((key.to_string(), n));
        self
    }
}

fn violation_section(e: &Error) -> Section {
    Section { payload: json!({ "status": "violation", "detail": e.to_string() }), status: Status::Violation, counters: Vec::new() }
}

fn run_section(f: impl FnOnce() -> tsring_core::Result<Section>) -> Result<Section, CliError> {
    match f() {
        Ok(s) => Ok(s),
        Err(e) if is_input_error(&e) => Err(CliError::Core(e)),
        Err(e) => Ok(violation_section(&e)),
    }
}

fn oracle_section(ring: &TRing, strategy: Strategy) -> tsring_core::Result<Section> {
    let rep = check_table(ring, strategy)?;
    let moved = check_representative_independence(ring, strategy)?;
    Ok(Section::ok(json!({
        "status": "ok",
        "products_compared": int(rep.products),
        "double_cosets": int(rep.cosets),
        "representative_independence_pairs": int(moved),
    }))
    .counted("oracle_products", rep.products)
    .counted("double_cosets", rep.cosets))
}

fn assoc_section(ring: &TRing, strategy: Strategy) -> tsring_core::Result<Section> {
    let triples = ring.check_associativity(strategy)?;
    let identity = ring.check_identity()?;
    let grading = ring.check_grading()?;
    let cosets = ring.check_coset_independence()?;
    let mut ideal = 0;
    for i in 0..=ring.params().n() {
        ideal += ring.check_ideal(i)?;
    }
    let group = ring.model();
    let laws = if group.order() <= 150 { Some(laws::check_all(group, strategy)?) } else { None };
    Ok(Section::ok(json!({
        "status": "ok",
        "associative_triples": int(triples),
        "identity_checks": int(identity),
        "identity": basis_json(&ring.identity_basis()),
        "grading_checks": int(grading),
        "ideal_checks": int(ideal),
        "coset_independence_checks": int(cosets),
        "group_law_checks": laws.map_or(Value::Null, int),
    }))
    .counted("associative_triples", triples))
}

fn theorem_a_section(params: ModelParams) -> tsring_core::Result<Section> {
    let c = cartan_matrix(params);
    let s = snf(&c);
    if !s.certify(&c) {
        return Err(Error::Violation("Smith form certificate fails".into()));
    }
    let certs = theorem_a_idempotents(&c)?;
    let eps = certify_family(&c, &epsilon_family(params.e() as usize))?;
    let (rank_mod_p, units) = maximality_ranks(&c, params.p())?;
    let r = params.e() as usize - 1;
    if certs.len() != r || !family_is_certified(&certs) || !family_is_certified(&eps) || rank_mod_p != units {
        return Err(Error::Violation(format!(
            "theorem A certificates: {} idempotents, expected {r}; rank mod p {rank_mod_p}, unit divisors {units}",
            certs.len()
        )));
    }
    Ok(Section::ok(json!({
        "status": "ok",
        "elementary_divisors": s.diagonal().iter().map(int).collect::<Vec<_>>(),
        "idempotents": int(certs.len()),
        "corner_ranks": certs.iter().map(|c| c.corner_rank.map_or(Value::Null, int)).collect::<Vec<_>>(),
        "epsilon_family_certified": true,
        "maximality": { "rank_mod_p": int(rank_mod_p), "unit_divisors": int(units), "scope": "partial" },
    }))
    .counted("idempotents_certified", certs.len() + eps.len()))
}

fn theorem_b_field<F: ScalarField>(ring: &TRing, field: F) -> tsring_core::Result<Value> {
    let params = ring.params();
    let one = pr_identity_over_k(params, field.clone())?;
    if ring.mult(&one, &one)? != one {
        return Err(Error::Violation(format!("1_kPr not idempotent over {}", field.name())));
    }
    if !centrality_check_pr_identity(ring, field.clone())? {
        return Err(Error::Violation(format!("1_kPr not central over {}", field.name())));
    }
    let pairs = FieldMatrixIso::new(&cartan_matrix(params), field.clone())?.check()?;
    Ok(json!({ "field": field.name(), "identity": element_json(&one), "matrix_pairs_checked": int(pairs) }))
}

fn theorem_b_section(ring: &TRing, fields: &[FieldSpec]) -> tsring_core::Result<Section> {
    let mut per = Vec::new();
    for f in fields {
        per.push(match *f {
            FieldSpec::Q => theorem_b_field(ring, Rationals)?,
            FieldSpec::F(q) => theorem_b_field(ring, PrimeField::new(q)?)?,
        });
    }
    let (integral, all_units) = integrality_criterion(&cartan_matrix(ring.params()))?;
    if integral != all_units {
        return Err(Error::Violation("integrality of 1_Pr disagrees with elementary divisors".into()));
    }
    Ok(Section::ok(json!({ "status": "ok", "fields": per, "identity_integral": integral })))
}

fn theorem_c_section(ring: &TRing, bound: usize, strategy: Strategy) -> tsring_core::Result<Section> {
    let t = theorem_c_decomposition(ring)?;
    let scan = match rational_central_idempotent_scan(ring, bound, strategy) {
        Ok(rep) => {
            if !rep.only_trivial() {
                return Err(Error::Violation(format!("integral central idempotent masks {:?}", rep.integral_masks)));
            }
            json!({
                "status": "ok",
                "block_counts": rep.block_counts.iter().map(int).collect::<Vec<_>>(),
                "primitive_central_idempotents": int(rep.total),
                "sums_scanned": int(rep.sums_scanned),
                "integral_masks": rep.integral_masks.iter().map(int).collect::<Vec<_>>(),
            })
        }
        Err(Error::ScanTooLarge { count, bound }) => {
            json!({ "status": "skipped", "primitive_central_idempotents": int(count), "bound": int(bound) })
        }
        Err(e) => return Err(e),
    };
    Ok(Section::ok(json!({
        "status": "ok",
        "members": t.members.iter().map(element_json).collect::<Vec<_>>(),
        "corner_ranks": t.corner_ranks.iter().map(int).collect::<Vec<_>>(),
        "outside_pr": int(t.outside_pr),
        "scan": scan,
        "out_of_scope": ["primitivity of the residual idempotent", "r <= l for arbitrary orthogonal families"],
    }))
    .counted("decomposition_members", t.members.len()))
}

fn theorem_d_field<F: ScalarField>(ring: &TRing, field: F, strategy: Strategy) -> tsring_core::Result<(Value, usize)> {
    let dec = central_decomposition(ring, field.clone())?;
    let mut blocks = vec![json!({ "level": "0", "dim": int(dec.dims[0]), "pairs_checked": int(block_iso_0(ring, &dec)?.pairs_checked) })];
    let mut pairs = 0;
    for i in 1..=ring.params().n() {
        let (_, cert) = block_iso_i(ring, &dec, i, strategy)?;
        pairs += cert.pairs_checked;
        blocks.push(json!({ "level": int(i), "dim": int(cert.dim), "pairs_checked": int(cert.pairs_checked) }));
    }
    Ok((
        json!({
            "field": field.name(),
            "dims": dec.dims.iter().map(int).collect::<Vec<_>>(),
            "identity_checks": int(dec.checks),
            "blocks": blocks,
            "chain_idempotents": dec.e_list.iter().map(element_json).collect::<Vec<_>>(),
        }),
        pairs + dec.checks,
    ))
}

fn theorem_d_section(ring: &TRing, fields: &[FieldSpec], strategy: Strategy) -> tsring_core::Result<Section> {
    let mut per = Vec::new();
    let mut count = 0;
    for f in fields {
        let (v, n) = match *f {
            FieldSpec::Q => theorem_d_field(ring, Rationals, strategy)?,
            FieldSpec::F(q) => theorem_d_field(ring, PrimeField::new(q)?, strategy)?,
        };
        per.push(v);
        count += n;
    }
    Ok(Section::ok(json!({ "status": "ok", "fields": per })).counted("block_checks", count))
}

fn certificate_json(c: &SemisimplicityCertificate) -> Value {
    match c {
        SemisimplicityCertificate::NondegenerateTraceForm { rank, determinant } => json!({
            "kind": "nondegenerate_trace_form",
            "rank": int(rank),
            "determinant": determinant.as_ref().map_or(Value::Null, int),
        }),
        SemisimplicityCertificate::BlockNilpotent { level, element } => {
            json!({ "kind": "block_central_nilpotent", "level": int(level), "element": terms_json(element) })
        }
        SemisimplicityCertificate::QuotientNilpotent { power, element } => {
            json!({ "kind": "quotient_nilpotent", "power": int(power), "element": terms_json(element) })
        }
        SemisimplicityCertificate::ProjectiveNilpotent { element } => {
            json!({ "kind": "projective_central_nilpotent", "element": terms_json(element) })
        }
        SemisimplicityCertificate::None { trace_form_rank } => {
            json!({ "kind": "none", "trace_form_rank": int(trace_form_rank) })
        }
    }
}

fn semisimple_section(ring: &TRing, fields: &[FieldSpec]) -> tsring_core::Result<Section> {
    let mut per = Vec::new();
    let mut decisions = Vec::new();
    let mut status = Status::Ok;
    for f in fields {
        let rep = semisimplicity_decide(ring, f.characteristic())?;
        let word = match rep.decision {
            Decision::Semisimple => "Yes",
            Decision::NotSemisimple => "No",
            Decision::Inconclusive => "Inconclusive",
        };
        decisions.push(Value::String(word.into()));
        let agrees = rep.matches_criterion();
        status = status.combine(match rep.decision {
            Decision::Inconclusive => Status::Inconclusive,
            _ if !agrees => Status::Violation,
            _ => Status::Ok,
        });
        per.push(json!({
            "field": f.name(),
            "decision": format!("{:?}", rep.decision),
            "certificate": certificate_json(&rep.certificate),
            "aut_order_invertible": rep.aut_invertible,
            "agrees_with_criterion": agrees,
        }));
    }
    Ok(Section {
        payload: json!({ "status": status.as_str(), "decisions": decisions, "fields": per }),
        status,
        counters: vec![("semisimplicity_decisions".into(), fields.len())],
    })
}

pub fn cmd_verify(params: ModelParams, opts: &VerifyOptions) -> Result<Report, CliError> {
    let ring = TRing::with_strategy(params, opts.strategy);
    let mut report = Report::new("verify", params);
    let mut sections = Map::new();
    for &check in &opts.which {
        let fields = &opts.fields;
        let section = run_section(|| match check {
            Check::Oracle => oracle_section(&ring, opts.strategy),
            Check::Assoc => assoc_section(&ring, opts.strategy),
            Check::TheoremA => theorem_a_section(params),
            Check::TheoremB => theorem_b_section(&ring, fields),
            Check::TheoremC => theorem_c_section(&ring, opts.scan_bound, opts.strategy),
            Check::TheoremD => theorem_d_section(&ring, fields, opts.strategy),
            Check::Semisimple => semisimple_section(&ring, fields),
        })?;
        report.status = report.status.combine(section.status);
        for (k, n) in &section.counters {
            report.count(k, *n);
        }
        sections.insert(check.name().to_string(), section.payload);
    }
    report.payload = Value::Object(sections);
    Ok(report)
}

pub fn cmd_oracle_check(params: ModelParams, strategy: Strategy) -> Result<Report, CliError> {
    let ring = TRing::with_strategy(params, strategy);
    let section = run_section(|| oracle_section(&ring, strategy))?;
    let mut report = Report::new("oracle-check", params);
    report.status = section.status;
    for (k, n) in &section.counters {
        report.count(k, *n);
    }
    report.payload = section.payload;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, n: u32, e: u64) -> ModelParams {
        ModelParams::new(p, n, e).unwrap()
    }

    #[test]
    fn field_parsing() {
        assert_eq!(FieldSpec::parse_list("Q,F2,F7").unwrap(), vec![FieldSpec::Q, FieldSpec::F(2), FieldSpec::F(7)]);
        assert!(FieldSpec::parse("F4").is_err());
        assert!(FieldSpec::parse("R").is_err());
        assert_eq!(Check::parse_list("semisimple,oracle").unwrap(), vec![Check::Oracle, Check::Semisimple]);
    }

    #[test]
    fn basis_and_table() {
        assert_eq!(cmd_basis(params(3, 2, 2)).payload["rank"], "12");
        let t = cmd_table(params(3, 1, 1), Strategy::Sequential);
        let rows = t.payload["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 9);
        assert_eq!(rows[0]["product"][0]["coeff"], "3");
        let csv = table_csv(params(3, 1, 1), Strategy::Sequential).unwrap();
        assert_eq!(csv.lines().nth(1).unwrap(), r#""P(0,0)","P(0,0)","P(0,0):3""#);
    }

    #[test]
    fn verify_examples() {
        let opts = |which: &str, fields: &str| VerifyOptions {
            which: Check::parse_list(which).unwrap(),
            fields: FieldSpec::parse_list(fields).unwrap(),
            scan_bound: 20,
            strategy: Strategy::Sequential,
        };
        let r = cmd_verify(params(3, 1, 1), &opts("theorem-d", "Q")).unwrap();
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.payload["theorem-d"]["fields"][0]["dims"], json!(["1", "2"]));
        let r = cmd_verify(params(3, 2, 2), &opts("semisimple", "F2,F3,F5,F7")).unwrap();
        assert_eq!(r.payload["semisimple"]["decisions"], json!(["No", "No", "Yes", "Yes"]));
        assert_eq!(r.status, Status::Ok);
        assert!(matches!(cmd_verify(params(3, 1, 1), &opts("theorem-d", "F3")), Err(CliError::Core(Error::CharIsP(3)))));
    }
}
