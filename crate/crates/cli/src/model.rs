//! Conversion between documents and the core objects, over either backend.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use qavg::calculus::{universal_calculus, Calculus};
use qavg::gallery::{build_classical_coaction, GalleryCase};
use qavg::hopf::compute_haar;
use qavg::{
    Coaction, Error, FiniteGroup, Functional, GroupAction, HopfData, InnerProduct, Matrix, Scalar, StarAlgebra,
};

use crate::document::*;
use crate::error::{CliError, CliResult};

pub fn scalar_from_doc<S: Scalar>(d: &ScalarDoc) -> CliResult<S> {
    Ok(S::from_gauss_rat(&Complex::new(
        part_to_rational(&d.0)?,
        part_to_rational(&d.1)?,
    )))
}

fn part_to_rational(p: &Part) -> CliResult<BigRational> {
    match p {
        Part::Exact(s) => {
            let (num, den) = match s.split_once('/') {
                Some((n, d)) => (n, d),
                None => (s.as_str(), "1"),
            };
            let parse = |x: &str| {
                x.parse::<BigInt>()
                    .map_err(|_| CliError::Parse(format!("bad rational {s:?}")))
            };
            let den = parse(den)?;
            if den.is_zero() {
                return Err(CliError::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse(num)?, den))
        }
        Part::Float(x) => BigRational::from_float(*x).ok_or_else(|| CliError::Parse(format!("non-finite number {x}"))),
    }
}

pub fn scalar_to_doc<S: Scalar>(s: &S) -> ScalarDoc {
    match s.as_gauss_rat() {
        Some(z) => ScalarDoc(Part::Exact(z.re.to_string()), Part::Exact(z.im.to_string())),
        None => {
            let c = s.to_c64();
            let clean = |x: f64| if x == 0.0 { 0.0 } else { x };
            ScalarDoc(Part::Float(clean(c.re)), Part::Float(clean(c.im)))
        }
    }
}

fn dense_vec<S: Scalar>(items: &[ScalarDoc], len: usize, what: &str) -> CliResult<Vec<S>> {
    if items.len() != len {
        return Err(CliError::Parse(format!(
            "{what} has length {}, expected {len}",
            items.len()
        )));
    }
    items.iter().map(scalar_from_doc).collect()
}

/// Dense row-major tensor of the given shape from sparse entries.
fn decode<S: Scalar>(entries: &[Entry], shape: &[usize], what: &str) -> CliResult<Vec<S>> {
    let size: usize = shape.iter().product();
    let mut out = vec![S::zero(); size];
    let mut seen = vec![false; size];
    for Entry(index, value) in entries {
        if index.len() != shape.len() || index.iter().zip(shape).any(|(i, n)| i >= n) {
            return Err(CliError::Parse(format!(
                "{what}: index {index:?} does not fit shape {shape:?}"
            )));
        }
        let flat = index.iter().zip(shape).fold(0, |acc, (i, n)| acc * n + i);
        if seen[flat] {
            return Err(CliError::Parse(format!("{what}: index {index:?} given twice")));
        }
        seen[flat] = true;
        out[flat] = scalar_from_doc(value)?;
    }
    Ok(out)
}

fn encode<S: Scalar>(data: &[S], shape: &[usize]) -> Vec<Entry> {
    data.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(flat, v)| {
            let mut index = vec![0; shape.len()];
            let mut rest = flat;
            for (slot, n) in index.iter_mut().zip(shape).rev() {
                *slot = rest % n;
                rest /= n;
            }
            Entry(index, scalar_to_doc(v))
        })
        .collect()
}

/// Linear map stored image-first: entry `[i, out...]` is row `out`, column `i`.
fn decode_map<S: Scalar>(entries: &[Entry], inputs: usize, out_shape: &[usize], what: &str) -> CliResult<Matrix<S>> {
    let rows: usize = out_shape.iter().product();
    let mut shape = vec![inputs];
    shape.extend_from_slice(out_shape);
    let flat = decode::<S>(entries, &shape, what)?;
    Ok(Matrix::from_fn(rows, inputs, |r, i| flat[i * rows + r].clone()))
}

fn encode_map<S: Scalar>(m: &Matrix<S>, out_shape: &[usize]) -> Vec<Entry> {
    let rows = m.rows();
    let flat: Vec<S> = (0..m.cols() * rows)
        .map(|ir| m.get(ir % rows, ir / rows).clone())
        .collect();
    let mut shape = vec![m.cols()];
    shape.extend_from_slice(out_shape);
    encode(&flat, &shape)
}

pub fn algebra_from_doc<S: Scalar>(d: &AlgebraDoc) -> CliResult<StarAlgebra<S>> {
    let n = d.dim;
    if n == 0 || d.labels.len() != n {
        return Err(CliError::Parse(format!(
            "algebra has dim {n} but {} labels",
            d.labels.len()
        )));
    }
    let mult = decode(&d.mult, &[n, n, n], "algebra.mult")?;
    let unit = dense_vec(&d.unit, n, "algebra.unit")?;
    let star = decode::<S>(&d.star, &[n, n], "algebra.star")?;
    let star = Matrix::from_fn(n, n, |i, j| star[i * n + j].clone());
    Ok(StarAlgebra::new(d.labels.clone(), mult, unit, star)?)
}

pub fn algebra_to_doc<S: Scalar>(a: &StarAlgebra<S>) -> AlgebraDoc {
    let n = a.dim();
    AlgebraDoc {
        dim: n,
        labels: a.labels().to_vec(),
        mult: encode(a.mult_tensor(), &[n, n, n]),
        unit: a.unit().iter().map(scalar_to_doc).collect(),
        star: encode(a.star_matrix().data(), &[n, n]),
    }
}

#[derive(Clone, Debug)]
pub enum CalculusKind {
    Universal,
    Explicit,
}

/// Everything a document describes, in one backend.
#[derive(Clone, Debug)]
pub struct Model<S> {
    pub name: Option<String>,
    pub description: Option<String>,
    pub tolerance: f64,
    pub algebra: StarAlgebra<S>,
    pub hopf: Option<HopfData<S>>,
    /// Whether the quantum group's algebra is distinct from the top-level one.
    pub hopf_has_own_algebra: bool,
    pub haar_supplied: bool,
    /// Failure to compute the Haar functional, when none was supplied.
    pub haar_error: Option<Error>,
    pub coaction: Option<Coaction<S>>,
    pub calculus: Option<(Calculus<S>, CalculusKind)>,
    pub gamma: Option<Matrix<S>>,
    pub metric: Option<InnerProduct<S>>,
    pub provenance: Option<GroupAction>,
    pub provenance_doc: Option<ProvenanceDoc>,
    hopf_in_doc: bool,
    coaction_in_doc: bool,
}

fn provenance_from_doc(p: &ProvenanceDoc) -> CliResult<GroupAction> {
    let group = FiniteGroup::from_table(p.group.labels.clone(), p.group.table.clone())?;
    let action = GroupAction::new(group, p.points.clone(), p.action.clone())?;
    Ok(match p.convention {
        Convention::Forward => action,
        Convention::Inverse => action.inverse_convention(),
    })
}

fn provenance_to_doc(a: &GroupAction) -> ProvenanceDoc {
    ProvenanceDoc {
        group: GroupDoc {
            labels: a.group().labels().to_vec(),
            table: a.group().table().to_vec(),
        },
        points: a.point_labels().to_vec(),
        action: a.table().to_vec(),
        convention: Convention::Forward,
    }
}

impl<S: Scalar> Model<S> {
    pub fn from_document(doc: &Document, tol_override: Option<f64>) -> CliResult<Self> {
        let tol = tol_override.unwrap_or(doc.tolerance);
        let algebra = algebra_from_doc::<S>(&doc.algebra)?;
        let provenance = doc.group_provenance.as_ref().map(provenance_from_doc).transpose()?;

        let mut haar_supplied = false;
        let mut haar_error = None;
        let mut hopf_has_own_algebra = false;
        let hopf = match (&doc.hopf, &provenance) {
            (Some(h), _) => {
                let q = match &h.algebra {
                    Some(a) => {
                        hopf_has_own_algebra = true;
                        algebra_from_doc::<S>(a)?
                    }
                    None => algebra.clone(),
                };
                let m = q.dim();
                let coproduct = decode_map(&h.coproduct, m, &[m, m], "hopf.coproduct")?;
                let counit = Functional::new(dense_vec(&h.counit, m, "hopf.counit")?);
                let antipode = decode_map(&h.antipode, m, &[m], "hopf.antipode")?;
                let data = HopfData::new(q, coproduct, counit, antipode)?;
                Some(match &h.haar {
                    Some(haar) => {
                        haar_supplied = true;
                        data.with_haar_unchecked(Functional::new(dense_vec(haar, m, "hopf.haar")?))
                    }
                    None => match compute_haar(&data, tol) {
                        Ok(haar) => data.with_haar_unchecked(haar),
                        Err(e) => {
                            haar_error = Some(e);
                            data
                        }
                    },
                })
            }
            (None, Some(action)) if doc.coaction.is_none() => {
                hopf_has_own_algebra = true;
                Some(build_classical_coaction::<S>(action, tol)?.cqg().clone())
            }
            _ => None,
        };

        let coaction = match (&doc.coaction, &provenance, &hopf) {
            (Some(c), _, Some(h)) => {
                let (n, m) = (algebra.dim(), h.dim());
                let alpha = decode_map(&c.alpha, n, &[n, m], "coaction.alpha")?;
                let coaction = Coaction::new(algebra.clone(), h.clone(), alpha)?;
                Some(match &provenance {
                    Some(p) => coaction.with_provenance(p.clone()),
                    None => coaction,
                })
            }
            (Some(_), _, None) => return Err(CliError::Parse("coaction given without a Hopf algebra".into())),
            (None, Some(action), Some(h)) if doc.hopf.is_none() => {
                let built = build_classical_coaction::<S>(action, tol)?;
                if built.base().labels().len() != algebra.dim() {
                    return Err(CliError::Parse(
                        "group provenance does not act on the algebra's points".into(),
                    ));
                }
                Some(Coaction::new(algebra.clone(), h.clone(), built.alpha().clone())?.with_provenance(action.clone()))
            }
            _ => None,
        };

        let (calculus, gamma) = match &doc.calculus {
            None => (None, None),
            Some(CalculusDoc::Named(_)) => (Some((universal_calculus(&algebra, tol), CalculusKind::Universal)), None),
            Some(CalculusDoc::Explicit(e)) => {
                let (n, k) = (algebra.dim(), e.dim);
                let left = decode(&e.left, &[n, k, k], "calculus.left")?;
                let right = decode(&e.right, &[k, n, k], "calculus.right")?;
                let diff = decode_map(&e.diff, n, &[k], "calculus.diff")?;
                let calc = Calculus::new(algebra.clone(), k, left, right, diff, None)?;
                let gamma = match (&e.gamma, &hopf) {
                    (Some(g), Some(h)) => Some(decode_map(g, k, &[k, h.dim()], "calculus.gamma")?),
                    (Some(_), None) => {
                        return Err(CliError::Parse("calculus.gamma given without a Hopf algebra".into()))
                    }
                    (None, _) => None,
                };
                (Some((calc, CalculusKind::Explicit)), gamma)
            }
        };

        let metric = match (&doc.metric, &calculus) {
            (Some(m), Some((calc, _))) => {
                let (n, k) = (algebra.dim(), calc.dim());
                let flat = decode::<S>(&m.gram, &[k, k, n], "metric.gram")?;
                let gram = flat.chunks(n).map(<[S]>::to_vec).collect();
                Some(InnerProduct::new(calc.clone(), gram)?)
            }
            (Some(_), None) => return Err(CliError::Parse("metric given without a calculus".into())),
            (None, _) => None,
        };

        Ok(Model {
            name: doc.name.clone(),
            description: doc.description.clone(),
            tolerance: tol,
            algebra,
            hopf,
            hopf_has_own_algebra,
            haar_supplied,
            haar_error,
            coaction,
            calculus,
            gamma,
            metric,
            provenance,
            provenance_doc: doc.group_provenance.clone(),
            hopf_in_doc: doc.hopf.is_some(),
            coaction_in_doc: doc.coaction.is_some(),
        })
    }

    /// Model of a gallery case, with every structure tensor explicit.
    pub fn from_gallery(case: &GalleryCase<S>, tol: f64) -> Self {
        let coaction = case.coaction().clone();
        let hopf = coaction.cqg().clone();
        let kind = if case.calculus().embedding().is_some() {
            CalculusKind::Universal
        } else {
            CalculusKind::Explicit
        };
        let algebra = coaction.base().clone();
        let own = hopf.algebra().labels() != algebra.labels() || hopf.algebra().mult_tensor() != algebra.mult_tensor();
        Model {
            name: Some(case.name.to_string()),
            description: Some(case.description.to_string()),
            tolerance: tol,
            algebra,
            hopf_has_own_algebra: own,
            haar_supplied: hopf.haar().is_some(),
            haar_error: None,
            hopf: Some(hopf),
            provenance_doc: coaction.provenance().map(provenance_to_doc),
            provenance: coaction.provenance().cloned(),
            coaction: Some(coaction),
            calculus: Some((case.calculus().clone(), kind)),
            gamma: None,
            metric: Some(case.metric.clone()),
            hopf_in_doc: true,
            coaction_in_doc: true,
        }
    }

    pub fn to_document(&self) -> Document {
        let hopf = self.hopf.as_ref().filter(|_| self.hopf_in_doc).map(|h| {
            let m = h.dim();
            HopfDoc {
                algebra: self.hopf_has_own_algebra.then(|| algebra_to_doc(h.algebra())),
                coproduct: encode_map(h.coproduct(), &[m, m]),
                counit: h.counit().coeffs.iter().map(scalar_to_doc).collect(),
                antipode: encode_map(h.antipode(), &[m]),
                haar: h
                    .haar()
                    .filter(|_| self.haar_supplied)
                    .map(|f| f.coeffs.iter().map(scalar_to_doc).collect()),
            }
        });
        let coaction = self
            .coaction
            .as_ref()
            .filter(|_| self.coaction_in_doc)
            .map(|c| CoactionDoc {
                alpha: encode_map(c.alpha(), &[c.base().dim(), c.cqg().dim()]),
            });
        let calculus = self.calculus.as_ref().map(|(calc, kind)| match kind {
            CalculusKind::Universal => CalculusDoc::Named("universal".into()),
            CalculusKind::Explicit => {
                let (n, k) = (calc.base().dim(), calc.dim());
                CalculusDoc::Explicit(ExplicitCalculus {
                    dim: k,
                    left: encode(calc.left_tensor(), &[n, k, k]),
                    right: encode(calc.right_tensor(), &[k, n, k]),
                    diff: encode_map(calc.diff(), &[k]),
                    gamma: self.gamma.as_ref().map(|g| encode_map(g, &[k, g.rows() / k.max(1)])),
                })
            }
        });
        let metric = self.metric.as_ref().map(|g| {
            let (n, k) = (g.base().dim(), g.dim());
            let flat: Vec<S> = g.gram().iter().flatten().cloned().collect();
            MetricDoc {
                gram: encode(&flat, &[k, k, n]),
            }
        });
        Document {
            version: VERSION.to_string(),
            name: self.name.clone(),
            description: self.description.clone(),
            scalar_backend: if S::EXACT { Backend::Rational } else { Backend::Float },
            tolerance: self.tolerance,
            algebra: algebra_to_doc(&self.algebra),
            hopf,
            coaction,
            calculus,
            metric,
            group_provenance: self.provenance_doc.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qavg::{GaussRat, C64};

    #[test]
    fn rational_parts_parse_and_print() {
        let d = ScalarDoc(Part::Exact("-6/4".into()), Part::Exact("2".into()));
        let z: GaussRat = scalar_from_doc(&d).unwrap();
        assert_eq!(
            scalar_to_doc(&z),
            ScalarDoc(Part::Exact("-3/2".into()), Part::Exact("2".into()))
        );
        let f: C64 = scalar_from_doc(&d).unwrap();
        assert_eq!(scalar_to_doc(&f), ScalarDoc(Part::Float(-1.5), Part::Float(2.0)));
        assert!(scalar_from_doc::<GaussRat>(&ScalarDoc(Part::Exact("1/0".into()), Part::Exact("0".into()))).is_err());
        assert!(scalar_from_doc::<GaussRat>(&ScalarDoc(Part::Exact("x".into()), Part::Exact("0".into()))).is_err());
    }

    #[test]
    fn floats_convert_exactly_into_rationals() {
        let z: GaussRat = scalar_from_doc(&ScalarDoc(Part::Float(0.375), Part::Float(0.0))).unwrap();
        assert_eq!(scalar_to_doc(&z).0, Part::Exact("3/8".into()));
    }

    #[test]
    fn sparse_codec_round_trips() {
        let data: Vec<GaussRat> = (0..12)
            .map(|i| GaussRat::from_i64(if i % 5 == 0 { i } else { 0 }))
            .collect();
        let entries = encode(&data, &[2, 3, 2]);
        assert_eq!(
            entries.iter().map(|e| e.0.clone()).collect::<Vec<_>>(),
            vec![vec![0, 2, 1], vec![1, 2, 0]]
        );
        assert_eq!(decode::<GaussRat>(&entries, &[2, 3, 2], "t").unwrap(), data);
        assert!(decode::<GaussRat>(&entries, &[2, 2, 2], "t").is_err());
        let twice = vec![entries[0].clone(), entries[0].clone()];
        assert!(decode::<GaussRat>(&twice, &[2, 3, 2], "t").is_err());
    }
}
