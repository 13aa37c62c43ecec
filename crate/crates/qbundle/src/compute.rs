//! Named quantities printed in canonical form.

use qbundle_core::assoc::{Assoc, Section, Side};
use qbundle_core::bundle::Connection;
use qbundle_core::examples::Example;
use qbundle_core::{gauge, tensor};

use crate::format::pieces;
use crate::CliError;

pub const QUANTITIES: [&str; 7] = ["qtrs", "nabla", "herm", "defect", "curvature", "cov-deriv", "potential"];

#[derive(Debug, Clone, Default)]
pub struct Request {
    pub connection: Option<String>,
    pub rep: Option<String>,
    pub section: Option<String>,
    /// Second section for pairings; defaults to the first.
    pub with: Option<String>,
    pub right: bool,
    pub arg: Option<String>,
}

fn connection<'e>(ex: &'e Example, req: &Request) -> Result<&'e Connection, CliError> {
    match &req.connection {
        Some(n) => Ok(ex.connection(n)?),
        None => ex.connections.first().ok_or(CliError::MissingArgument("--connection")),
    }
}

fn section(m: &Assoc<'_>, src: &str) -> Result<Section, CliError> {
    let a = m.bundle.alg();
    let values = pieces(src, ',').into_iter().map(|(_, p)| a.parse(p)).collect::<qbundle_core::Result<Vec<_>>>()?;
    Ok(m.section(values)?)
}

fn show_values(m: &Assoc<'_>, v: &[qbundle_core::Elem]) -> String {
    let a = m.bundle.alg();
    let parts: Vec<String> = v.iter().map(|e| a.fmt(e)).collect();
    if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!("[{}]", parts.join(", "))
    }
}

pub fn compute(ex: &Example, quantity: &str, req: &Request) -> Result<String, CliError> {
    let b = &*ex.bundle;
    let a = b.alg();
    let side = if req.right { Side::Right } else { Side::Left };
    match quantity {
        "qtrs" => {
            let v = b.galg().parse(req.arg.as_deref().ok_or(CliError::MissingArgument("--arg"))?)?;
            let tr = gauge::Translation::new(b, connection(ex, req)?)?;
            Ok(tensor::fmt(&[a, a], &tr.eval(&v)?))
        }
        "cov-deriv" => {
            let phi = a.parse(req.arg.as_deref().ok_or(CliError::MissingArgument("--arg"))?)?;
            Ok(a.fmt(&b.cov_deriv(connection(ex, req)?, &phi)?))
        }
        "potential" => {
            let pot = gauge::potential(b, connection(ex, req)?)?;
            Ok(pot.iter().map(|e| a.fmt(e)).collect::<Vec<_>>().join("\n"))
        }
        "curvature" if req.rep.is_none() => {
            let w = connection(ex, req)?;
            let names = b.env.calc.basis_names();
            let mut lines = Vec::new();
            for (i, n) in names.iter().enumerate() {
                lines.push(format!("{n}: {}", a.fmt(&b.curvature(w, i)?)));
            }
            Ok(lines.join("\n"))
        }
        "nabla" | "herm" | "defect" | "curvature" => {
            let rep = req.rep.as_deref().ok_or(CliError::MissingArgument("--rep"))?;
            let m = Assoc::new(b, rep)?;
            let s = section(&m, req.section.as_deref().ok_or(CliError::MissingArgument("--section"))?)?;
            let t = match &req.with {
                Some(src) => section(&m, src)?,
                None => s.clone(),
            };
            let out = match quantity {
                "nabla" => {
                    let w = connection(ex, req)?;
                    let n = if req.right { m.hat_nabla(w, &s)? } else { m.nabla(w, &s)? };
                    show_values(&m, &n.values)
                }
                "herm" => a.fmt(&if req.right { m.herm_r(&s, &t)? } else { m.herm_l(&s, &t)? }),
                "defect" => a.fmt(&m.compat_defect(connection(ex, req)?, &s, &t, side)?),
                _ => {
                    let w = connection(ex, req)?;
                    show_values(&m, &if req.right { m.hat_curvature(w, &s)? } else { m.curvature(w, &s)? })
                }
            };
            Ok(out)
        }
        q => Err(CliError::UnknownQuantity(q.into())),
    }
}
