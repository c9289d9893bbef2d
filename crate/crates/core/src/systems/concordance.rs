use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{gcd, Chart, Poly3, RationalFunction};
use crate::calculus::VectorField3;
use crate::parser::parse_rational;

/// A one-form transcribed from printed text: `factor · (c₀ dx + c₁ dy + c₂ dz)`.
/// `factor` may mention `M`, the last multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedForm {
    pub name: &'static str,
    pub factor: &'static str,
    pub components: [&'static str; 3],
}

impl PrintedForm {
    pub const fn new(name: &'static str, factor: &'static str, components: [&'static str; 3]) -> Self {
        PrintedForm { name, factor, components }
    }

    /// The common factor and the bracketed coefficients, as values.
    pub fn resolve(&self, chart: &Chart, m: &RationalFunction) -> (RationalFunction, VectorField3) {
        let factor = parse_rational(&self.factor.replace('M', &format!("({m})")), chart).expect("well-formed factor");
        let inner = self.components.map(|c| parse_rational(c, chart).expect("well-formed coefficient"));
        (factor, VectorField3::new(inner))
    }
}

/// Comparison of one printed coefficient against the computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentConcordance {
    pub form: String,
    pub component: String,
    pub status: &'static str,
    /// Common factor pulled out of the printed form; `printed` and
    /// `computed` are the coefficients with this factor divided out.
    pub factor: String,
    pub printed: String,
    pub computed: String,
    /// `printed / computed` when it is a constant other than 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<String>,
    /// Common denominator the term lists below are written over.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub denominator: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub printed_only: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub computed_only: Vec<String>,
    /// Ratio of the two terms when exactly one term differs on each side.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monomial_factor: Option<String>,
}

impl ComponentConcordance {
    pub fn matches(&self) -> bool {
        self.status == "match"
    }
}

fn compare(
    form: &str,
    factor: &str,
    component: &str,
    printed: &RationalFunction,
    computed: &RationalFunction,
) -> ComponentConcordance {
    let mut out = ComponentConcordance {
        form: form.into(),
        component: component.into(),
        status: "match",
        factor: factor.into(),
        printed: printed.to_string(),
        computed: computed.to_string(),
        ratio: None,
        denominator: None,
        printed_only: Vec::new(),
        computed_only: Vec::new(),
        monomial_factor: None,
    };
    if printed == computed {
        return out;
    }
    out.status = "mismatch";
    if !computed.is_zero() {
        out.ratio = (printed / computed).as_constant().map(|r| r.to_string());
    }

    let (dp, dc) = (printed.denom(), computed.denom());
    let g = gcd(dp, dc).expect("denominators are nonzero");
    let (cp, cc) = (dc.exact_div(&g).expect("gcd divides"), dp.exact_div(&g).expect("gcd divides"));
    let den = dp * &cp;
    let (np, nc) = (printed.numer() * &cp, computed.numer() * &cc);
    let k = crate::algebra::coefficient_normalizer(
        den.terms().chain(np.terms()).chain(nc.terms()).map(|(_, c)| c),
    );
    let (den, np, nc) = (den.scale(&k), np.scale(&k), nc.scale(&k));
    let chart = printed.chart();
    let monomials: BTreeSet<_> = np.terms().chain(nc.terms()).map(|(m, _)| *m).collect();
    let mut p_only = Vec::new();
    let mut c_only = Vec::new();
    for m in monomials.iter().rev() {
        let (a, b) = (np.coefficient(m), nc.coefficient(m));
        if a != b {
            if !num_traits::Zero::is_zero(&a) {
                p_only.push(Poly3::monomial(chart, *m, a));
            }
            if !num_traits::Zero::is_zero(&b) {
                c_only.push(Poly3::monomial(chart, *m, b));
            }
        }
    }
    if let ([p], [c]) = (p_only.as_slice(), c_only.as_slice()) {
        let f = &RationalFunction::from_poly(p.clone()) / &RationalFunction::from_poly(c.clone());
        out.monomial_factor = Some(f.to_string());
    }
    out.denominator = Some(den.to_string());
    out.printed_only = p_only.iter().map(ToString::to_string).collect();
    out.computed_only = c_only.iter().map(ToString::to_string).collect();
    out
}

/// Componentwise comparison of printed forms against computed covectors,
/// looked up by form name.
pub fn concordance<'a>(
    printed: &[PrintedForm],
    computed: impl Fn(&str) -> Option<&'a VectorField3>,
    m: &RationalFunction,
) -> Vec<ComponentConcordance> {
    let chart = m.chart();
    let mut out = Vec::new();
    for form in printed {
        let Some(actual) = computed(form.name) else { continue };
        let (factor, expected) = form.resolve(chart, m);
        let factor_inv = factor.inv().expect("printed factor is nonzero");
        for i in 0..3 {
            let basis = format!("d{}", chart.name(i));
            let computed = &actual.components[i] * &factor_inv;
            out.push(compare(form.name, form.factor, &basis, &expected.components[i], &computed));
        }
    }
    out
}
