//! Self-contained JSON certificates and their independent verification.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::reality::{
    build_conjugator, build_hermitian_form, duality_pairing, is_c_real, skew_form, symmetric_form,
    ConjMethod, FormCert, FormKind, FormMethod, InvolutionStatus, PairingEntry,
};
use crate::search::SearchConfig;

/// Matrix rows as element literals.
pub type RowsJson = Vec<Vec<String>>;

/// Everything needed to re-check a verdict without redoing the derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub field: String,
    pub n: usize,
    /// `false` for `n = 1`, which lies outside the usual `n ≥ 2` setting.
    pub paper_range: bool,
    pub seed: u64,
    #[serde(rename = "T")]
    pub t: RowsJson,
    pub c_real: bool,
    /// Absent when factorization is unavailable over the field.
    pub pairing: Option<Vec<PairingEntry>>,
    /// First elementary divisor without a dual partner.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub not_c_real_witness: Option<String>,
    #[serde(rename = "S")]
    pub s: Option<RowsJson>,
    #[serde(rename = "S_is_involution")]
    pub s_is_involution: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub involution: Option<InvolutionStatus>,
    #[serde(default)]
    pub conj_methods: Vec<ConjMethod>,
    #[serde(rename = "H")]
    pub h: Option<RowsJson>,
    #[serde(rename = "H_kind")]
    pub h_kind: Option<FormKind>,
    #[serde(default)]
    pub form_methods: Vec<FormMethod>,
}

/// Which witnesses to put into a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CertRequest {
    pub conjugator: bool,
    pub form: Option<FormKind>,
}

/// A form of the requested kind.
pub fn form_of_kind<F: Field>(
    f: &F,
    t: &Mat<F::Elem>,
    kind: FormKind,
    cfg: &SearchConfig,
) -> Result<FormCert<F::Elem>> {
    match kind {
        FormKind::Hermitian => build_hermitian_form(f, t, cfg),
        FormKind::SkewHermitian => skew_form(f, t, cfg),
        FormKind::SymmetricBilinear => symmetric_form(f, t, cfg),
    }
}

/// Decides c-reality of `T` and attaches the requested witnesses. Missing
/// witnesses (non-c-real input, or no symmetric form) leave `S` or `H`
/// empty rather than failing.
pub fn certify<F: Field>(
    f: &F,
    t: &Mat<F::Elem>,
    req: CertRequest,
    cfg: &SearchConfig,
) -> Result<Certificate> {
    let c_real = is_c_real(f, t)?;
    let (pairing, not_c_real_witness) = match duality_pairing(f, t) {
        Ok(p) => (Some(p.to_json(f)), None),
        Err(Error::NotCReal { witness }) => (None, Some(witness)),
        Err(Error::FactorizationUnsupported(_)) => (None, None),
        Err(e) => return Err(e),
    };
    if pairing.is_some() != c_real && (pairing.is_some() || not_c_real_witness.is_some()) {
        return Err(Error::Internal(
            "invariant factors and the duality pairing disagree".into(),
        ));
    }
    let n = t.rows();
    let mut cert = Certificate {
        field: f.spec(),
        n,
        paper_range: n >= 2,
        seed: cfg.seed,
        t: t.to_string_rows(f),
        c_real,
        pairing,
        not_c_real_witness,
        s: None,
        s_is_involution: None,
        involution: None,
        conj_methods: Vec::new(),
        h: None,
        h_kind: None,
        form_methods: Vec::new(),
    };
    if req.conjugator && c_real {
        let s = build_conjugator(f, t, cfg)?;
        cert.s = Some(s.s.to_string_rows(f));
        cert.s_is_involution = Some(s.is_involution);
        cert.involution = Some(s.involution);
        cert.conj_methods = s.methods;
    }
    if let Some(kind) = req.form {
        cert.h_kind = Some(kind);
        let found = match form_of_kind(f, t, kind, cfg) {
            Ok(h) => Some(h),
            Err(Error::NotCReal { .. }) => None,
            // only the symmetric search can legitimately come back empty
            Err(Error::Precondition(_)) if kind == FormKind::SymmetricBilinear => None,
            Err(e) => return Err(e),
        };
        if let Some(h) = found {
            cert.h = Some(h.h.to_string_rows(f));
            cert.form_methods = h.methods;
        }
    }
    Ok(cert)
}

/// One named check run by [`verify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub ok: bool,
    pub checks: Vec<Check>,
}

/// Re-checks every claim in `cert` from its own data. When `t` is given it
/// must equal the certificate's matrix.
pub fn verify<F: Field>(
    f: &F,
    cert: &Certificate,
    t: Option<&Mat<F::Elem>>,
) -> Result<Verification> {
    if cert.field != f.spec() {
        return Err(Error::Precondition(format!(
            "certificate is over {} but the field is {}",
            cert.field,
            f.spec()
        )));
    }
    let tc = Mat::from_string_rows(f, &cert.t)?;
    let mut checks = Vec::new();
    let mut record = |name: &str, ok: bool| {
        checks.push(Check {
            name: name.into(),
            ok,
        })
    };
    if let Some(t) = t {
        record("matrix matches certificate", *t == tc);
    }
    record("n matches", tc.rows() == cert.n && tc.is_square());
    record("n >= 2 range flag", cert.paper_range == (cert.n >= 2));
    record("c-real verdict", is_c_real(f, &tc)? == cert.c_real);

    if let Some(rows) = &cert.s {
        let s = Mat::from_string_rows(f, rows)?;
        let sized = s.rows() == tc.rows() && s.is_square();
        record("S has the size of T", sized);
        if !sized {
            return Ok(Verification { ok: false, checks });
        }
        let target = tc.conj(f).inverse(f)?;
        let conj_ok = s.is_invertible(f) && s.mul(f, &tc)? == target.mul(f, &s)?;
        record("S T S^-1 = (T^c)^-1", conj_ok);
        let inv = s.mul(f, &s)?.is_identity(f);
        record("involution flag", cert.s_is_involution == Some(inv));
    }
    if let Some(rows) = &cert.h {
        let h = Mat::from_string_rows(f, rows)?;
        let kind = cert
            .h_kind
            .ok_or_else(|| Error::Parse("H present without H_kind".into()))?;
        let sized = h.rows() == tc.rows() && h.is_square();
        record("H has the size of T", sized);
        if !sized {
            return Ok(Verification { ok: false, checks });
        }
        let adj = |m: &Mat<F::Elem>| match kind {
            FormKind::SymmetricBilinear => m.transpose(),
            _ => m.conj_transpose(f),
        };
        let sym = match kind {
            FormKind::SkewHermitian => adj(&h) == h.neg(f),
            _ => adj(&h) == h,
        };
        record(&format!("H is {}", kind.name()), sym);
        record("H is T-invariant", adj(&tc).mul(f, &h)?.mul(f, &tc)? == h);
        record("H is nondegenerate", h.is_invertible(f));
    }
    let ok = checks.iter().all(|c| c.ok);
    Ok(Verification { ok, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;

    #[test]
    fn round_trip_and_tamper() {
        let f = FiniteField::new(2, 2, true).unwrap();
        let t = Mat::parse(&f, "[[0,1];[1,1]]").unwrap();
        let req = CertRequest {
            conjugator: true,
            form: Some(FormKind::Hermitian),
        };
        let cert = certify(&f, &t, req, &SearchConfig::default()).unwrap();
        assert!(cert.c_real && cert.paper_range);
        let json = serde_json::to_string(&cert).unwrap();
        assert!(json.contains("\"S_is_involution\""));
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert!(verify(&f, &back, Some(&t)).unwrap().ok);

        let mut bad = back.clone();
        bad.h = Some(vec![
            vec!["1".into(), "0".into()],
            vec!["0".into(), "w".into()],
        ]);
        assert!(!verify(&f, &bad, None).unwrap().ok);
    }

    #[test]
    fn non_c_real_certificate() {
        let f = FiniteField::new(3, 2, true).unwrap();
        let t = Mat::parse(&f, "[[1+i,0];[0,1+i]]").unwrap();
        let req = CertRequest {
            conjugator: true,
            form: Some(FormKind::Hermitian),
        };
        let cert = certify(&f, &t, req, &SearchConfig::default()).unwrap();
        assert!(!cert.c_real);
        assert!(cert.s.is_none() && cert.h.is_none());
        assert!(cert.not_c_real_witness.is_some());
        assert!(verify(&f, &cert, Some(&t)).unwrap().ok);
    }
}
