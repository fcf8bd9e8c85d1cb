//! Serialization of library values to JSON and CSV. Every float is
//! written with 17 significant digits so that output is replayable and
//! byte-stable across runs.

use std::io;

use serde::ser::{SerializeSeq, Serializer as _};
use serde::Serialize;

use selfsim_core::{
    BiPoly, CatalogRecord, DimensionProfile, ExceptionCertificate, ParamPoint, SeqPair,
};

/// JSON formatter that renders every f64 with 17 significant digits.
struct Sig17;

impl serde_json::ser::Formatter for Sig17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17);
    value.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(out).expect("serializer emits UTF-8")
}

/// The same 17-significant-digit rendering for CSV and table output.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

#[derive(Serialize)]
pub struct PairDto {
    pub s: String,
    pub t: String,
}

impl From<&SeqPair> for PairDto {
    fn from(pair: &SeqPair) -> Self {
        Self {
            s: pair.s().to_string(),
            t: pair.t().to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct PointDto {
    pub beta1: f64,
    pub beta2: f64,
    pub residual: f64,
    #[serde(rename = "in_R")]
    pub in_r: bool,
}

impl From<&ParamPoint> for PointDto {
    fn from(point: &ParamPoint) -> Self {
        Self {
            beta1: point.beta1(),
            beta2: point.beta2(),
            residual: point.residual(),
            in_r: point.in_r(),
        }
    }
}

#[derive(Serialize)]
pub struct CertificateDto {
    pub pair: PairDto,
    pub point: PointDto,
    pub d: f64,
    #[serde(rename = "p_M")]
    pub p_m: f64,
    pub witness_p: f64,
    pub sd: f64,
    pub sd_hat: f64,
    pub overlap_residual: f64,
    pub tool_version: String,
    pub config_digest: String,
}

impl From<&ExceptionCertificate> for CertificateDto {
    fn from(cert: &ExceptionCertificate) -> Self {
        Self {
            pair: PairDto::from(&cert.pair),
            point: PointDto::from(&cert.point),
            d: cert.d,
            p_m: cert.p_m,
            witness_p: cert.witness_p,
            sd: cert.sd,
            sd_hat: cert.sd_hat,
            overlap_residual: cert.overlap_residual,
            tool_version: cert.tool_version.clone(),
            config_digest: cert.config_digest.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct WindowDto {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Serialize)]
pub struct ProfileDto {
    pub pair: PairDto,
    pub beta1: f64,
    pub beta2: f64,
    pub d: f64,
    #[serde(rename = "p_M")]
    pub p_m: f64,
    pub sd_roots: Vec<f64>,
    pub window: Option<WindowDto>,
    pub witness_p: Option<f64>,
    pub sd_at_witness: Option<f64>,
    pub sdhat_at_witness: Option<f64>,
}

impl From<&DimensionProfile> for ProfileDto {
    fn from(profile: &DimensionProfile) -> Self {
        Self {
            pair: PairDto::from(&profile.pair),
            beta1: profile.point.beta1(),
            beta2: profile.point.beta2(),
            d: profile.d,
            p_m: profile.p_m,
            sd_roots: profile.sd_roots.clone(),
            window: profile.window.map(|w| WindowDto { lo: w.lo, hi: w.hi }),
            witness_p: profile.witness_p,
            sd_at_witness: profile.sd_at_witness,
            sdhat_at_witness: profile.sdhat_at_witness,
        }
    }
}

#[derive(Serialize)]
pub struct CatalogRecordDto {
    pub pair: PairDto,
    pub sufficient_condition: bool,
    pub fprime1: i64,
    #[serde(rename = "intersects_R")]
    pub intersects_r: bool,
    pub witness_point: Option<PointDto>,
    pub certificate: Option<CertificateDto>,
}

impl From<&CatalogRecord> for CatalogRecordDto {
    fn from(record: &CatalogRecord) -> Self {
        Self {
            pair: PairDto::from(&record.pair),
            sufficient_condition: record.sufficient_condition,
            fprime1: record.fprime1,
            intersects_r: record.intersects_r,
            witness_point: record.witness_point.as_ref().map(PointDto::from),
            certificate: record.certificate.as_ref().map(CertificateDto::from),
        }
    }
}

#[derive(Serialize)]
pub struct CatalogDto {
    pub n_min: usize,
    pub n_max: usize,
    pub y_step: f64,
    pub bisection_tol: f64,
    pub config_digest: String,
    pub records: Vec<CatalogRecordDto>,
}

/// Polynomial terms as a JSON array of `{i, j, c}` in display order.
pub fn poly_terms_json(poly: &BiPoly) -> String {
    #[derive(Serialize)]
    struct TermDto {
        i: u32,
        j: u32,
        c: i64,
    }
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17);
    let mut seq = ser.serialize_seq(None).expect("seq start");
    for ((i, j), c) in poly.ordered_terms() {
        seq.serialize_element(&TermDto { i, j, c }).expect("term");
    }
    seq.end().expect("seq end");
    String::from_utf8(out).expect("serializer emits UTF-8")
}

/// CSV of traced points, header per the file-format contract.
pub fn points_csv(points: &[ParamPoint]) -> String {
    let mut out = String::from("beta1,beta2,residual,in_R\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(p.beta1()),
            fmt_f64(p.beta2()),
            fmt_f64(p.residual()),
            p.in_r()
        ));
    }
    out
}

/// Flat CSV of catalog records; optional fields are left empty.
pub fn catalog_csv(records: &[CatalogRecord]) -> String {
    let mut out = String::from(
        "n,s,t,sufficient_condition,fprime1,intersects_R,beta1,beta2,residual,certified,d,p_M,witness_p,sd,sd_hat\n",
    );
    for r in records {
        let point = r
            .witness_point
            .as_ref()
            .map(|p| {
                (
                    fmt_f64(p.beta1()),
                    fmt_f64(p.beta2()),
                    fmt_f64(p.residual()),
                )
            })
            .unwrap_or_default();
        let cert = r
            .certificate
            .as_ref()
            .map(|c| {
                (
                    fmt_f64(c.d),
                    fmt_f64(c.p_m),
                    fmt_f64(c.witness_p),
                    fmt_f64(c.sd),
                    fmt_f64(c.sd_hat),
                )
            })
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.pair.n(),
            r.pair.s(),
            r.pair.t(),
            r.sufficient_condition,
            r.fprime1,
            r.intersects_r,
            point.0,
            point.1,
            point.2,
            r.certificate.is_some(),
            cert.0,
            cert.1,
            cert.2,
            cert.3,
            cert.4,
        ));
    }
    out
}
