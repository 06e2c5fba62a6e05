//! Deterministic netlist export and parse-back.
//!
//! Format (one element per line, 17 significant digits, ports `p1..pn`,
//! ground `0`, versioned header `* qsimnet v1 n=<n>`):
//!
//! ```text
//! C<k>     p<k> 0        <C>  IC=<v0>   tank capacitor
//! L<k>     p<k> 0        <L>            tank inductor (omitted when open)
//! LS<k>    p<k> 0        <L>            bridge-network shunt inductor
//! LB<k>_<l> p<k> p<l>    <L>            bridge-network series inductor
//! F<k>_<l> p<k> p<l>     <gamma>        integrating VCCS pair for any
//!                                        antisymmetric 1/s content
//! G<k>_<l> p<k> 0 p<l> 0 <g>            VCCS: I(p<k>) += g * V(p<l>)
//! ```
//!
//! Ordering is tanks ascending, then the `beta` upper triangle, then the
//! `alpha` upper triangle, so identical designs export byte-identically.
//! A gyrator of conductance `g` between ports k and l appears as the VCCS
//! pair `G<k>_<l> = g`, `G<l>_<k> = -g`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::synthesis::{flags_for, CircuitDesign, InteractionNetwork, PortTank};

/// A rendered netlist plus its element count (header and comments
/// excluded).
#[derive(Debug, Clone, PartialEq)]
pub struct Netlist {
    pub text: String,
    pub element_count: usize,
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// Inverse-inductance decomposition of `beta` used by both the exporter
/// and the parser, so the two sides stay in exact agreement.
///
/// Returns `(bridges, shunts, skews)` with `beta_sym[(k,l)] = -bridges[(k,l)]`
/// off the diagonal, `shunts[k] = beta[(k,k)] + sum_{l != k} beta_sym[(k,l)]`
/// and `skews` the antisymmetric remainder (upper triangle).
fn beta_elements(beta: &DMatrix<f64>) -> (DMatrix<f64>, Vec<f64>, DMatrix<f64>) {
    let n = beta.nrows();
    let mut bridges = DMatrix::zeros(n, n);
    let mut skews = DMatrix::zeros(n, n);
    for k in 0..n {
        for l in (k + 1)..n {
            let sym = 0.5 * (beta[(k, l)] + beta[(l, k)]);
            bridges[(k, l)] = -sym;
            skews[(k, l)] = 0.5 * (beta[(k, l)] - beta[(l, k)]);
        }
    }
    let mut shunts = vec![0.0; n];
    for k in 0..n {
        let mut acc = beta[(k, k)];
        for l in 0..n {
            if l != k {
                let sym = 0.5 * (beta[(k, l)] + beta[(l, k)]);
                acc += sym;
            }
        }
        shunts[k] = acc;
    }
    (bridges, shunts, skews)
}

/// Renders a design with the given initial port voltages. The output is a
/// pure function of its arguments: exporting the same design twice yields
/// byte-identical text.
pub fn export_netlist(design: &CircuitDesign, initial: &[f64]) -> Result<Netlist> {
    let n = design.ports();
    if initial.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: initial.len(),
        });
    }
    let finite = initial.iter().all(|v| v.is_finite())
        && design
            .interaction
            .alpha
            .iter()
            .chain(design.interaction.beta.iter())
            .all(|v| v.is_finite());
    if !finite {
        return Err(Error::NonFinite {
            what: "netlist values",
        });
    }

    let mut text = format!("* qsimnet v1 n={n}\n");
    let mut count = 0usize;

    for tank in &design.tanks {
        let k = tank.index;
        text.push_str(&format!(
            "C{k} p{k} 0 {} IC={}\n",
            fmt(tank.capacitance),
            fmt(initial[k - 1])
        ));
        count += 1;
        if let Some(l) = tank.inductance {
            text.push_str(&format!("L{k} p{k} 0 {}\n", fmt(l)));
            count += 1;
        }
    }

    let (bridges, shunts, skews) = beta_elements(&design.interaction.beta);
    for k in 0..n {
        if shunts[k] != 0.0 {
            text.push_str(&format!("LS{} p{} 0 {}\n", k + 1, k + 1, fmt(1.0 / shunts[k])));
            count += 1;
        }
        for l in (k + 1)..n {
            if bridges[(k, l)] != 0.0 {
                text.push_str(&format!(
                    "LB{}_{} p{} p{} {}\n",
                    k + 1,
                    l + 1,
                    k + 1,
                    l + 1,
                    fmt(1.0 / bridges[(k, l)])
                ));
                count += 1;
            }
            if skews[(k, l)] != 0.0 {
                text.push_str(&format!(
                    "F{}_{} p{} p{} {}\n",
                    k + 1,
                    l + 1,
                    k + 1,
                    l + 1,
                    fmt(skews[(k, l)])
                ));
                count += 1;
            }
        }
    }

    let alpha = &design.interaction.alpha;
    for k in 0..n {
        if alpha[(k, k)] != 0.0 {
            text.push_str(&format!(
                "G{}_{} p{} 0 p{} 0 {}\n",
                k + 1,
                k + 1,
                k + 1,
                k + 1,
                fmt(alpha[(k, k)])
            ));
            count += 1;
        }
        for l in (k + 1)..n {
            if alpha[(k, l)] != 0.0 {
                text.push_str(&format!(
                    "G{}_{} p{} 0 p{} 0 {}\n",
                    k + 1,
                    l + 1,
                    k + 1,
                    l + 1,
                    fmt(alpha[(k, l)])
                ));
                count += 1;
            }
            if alpha[(l, k)] != 0.0 {
                text.push_str(&format!(
                    "G{}_{} p{} 0 p{} 0 {}\n",
                    l + 1,
                    k + 1,
                    l + 1,
                    k + 1,
                    fmt(alpha[(l, k)])
                ));
                count += 1;
            }
        }
    }

    Ok(Netlist {
        text,
        element_count: count,
    })
}

fn parse_port(token: &str, n: usize, line_no: usize) -> Result<usize> {
    let idx: usize = token
        .strip_prefix('p')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::NetlistParse {
            line: line_no,
            reason: format!("expected port node, found '{token}'"),
        })?;
    if idx == 0 || idx > n {
        return Err(Error::NetlistParse {
            line: line_no,
            reason: format!("port index {idx} out of range 1..={n}"),
        });
    }
    Ok(idx)
}

fn parse_value(token: &str, line_no: usize) -> Result<f64> {
    token.parse().map_err(|_| Error::NetlistParse {
        line: line_no,
        reason: format!("bad numeric value '{token}'"),
    })
}

fn parse_pair(name: &str, prefix: &str, line_no: usize) -> Result<(usize, usize)> {
    let body = &name[prefix.len()..];
    let (a, b) = body.split_once('_').ok_or_else(|| Error::NetlistParse {
        line: line_no,
        reason: format!("expected {prefix}<k>_<l>, found '{name}'"),
    })?;
    let k = a.parse().map_err(|_| Error::NetlistParse {
        line: line_no,
        reason: format!("bad port index in '{name}'"),
    })?;
    let l = b.parse().map_err(|_| Error::NetlistParse {
        line: line_no,
        reason: format!("bad port index in '{name}'"),
    })?;
    Ok((k, l))
}

/// Parses text produced by [`export_netlist`] back into a design. All
/// component values round-trip exactly (the 17-digit rendering is
/// lossless for f64); flags are recomputed from the recovered matrices.
pub fn parse_netlist(text: &str) -> Result<CircuitDesign> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::NetlistParse {
        line: 1,
        reason: "empty netlist".to_string(),
    })?;
    let n: usize = header
        .strip_prefix("* qsimnet v1 n=")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::NetlistParse {
            line: 1,
            reason: format!("bad header '{header}'"),
        })?;
    if n == 0 {
        return Err(Error::NetlistParse {
            line: 1,
            reason: "port count must be at least 1".to_string(),
        });
    }

    let mut caps: Vec<Option<f64>> = vec![None; n];
    let mut v0 = vec![0.0; n];
    let mut tank_l: Vec<Option<f64>> = vec![None; n];
    let mut bridges = DMatrix::zeros(n, n);
    let mut shunt_inv = vec![0.0; n];
    let mut skews = DMatrix::zeros(n, n);
    let mut alpha = DMatrix::zeros(n, n);

    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('*') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let name = tokens[0];
        match name {
            _ if name.starts_with("LB") => {
                if tokens.len() != 4 {
                    return Err(Error::NetlistParse {
                        line: line_no,
                        reason: "bridge inductor needs 2 nodes and a value".to_string(),
                    });
                }
                let (k, l) = parse_pair(name, "LB", line_no)?;
                parse_port(tokens[1], n, line_no)?;
                parse_port(tokens[2], n, line_no)?;
                let lval = parse_value(tokens[3], line_no)?;
                bridges[(k - 1, l - 1)] = 1.0 / lval;
            }
            _ if name.starts_with("LS") => {
                let k = name[2..].parse::<usize>().map_err(|_| Error::NetlistParse {
                    line: line_no,
                    reason: format!("bad shunt name '{name}'"),
                })?;
                let lval = parse_value(tokens[3], line_no)?;
                shunt_inv[k - 1] = 1.0 / lval;
            }
            _ if name.starts_with('C') => {
                let k = name[1..].parse::<usize>().map_err(|_| Error::NetlistParse {
                    line: line_no,
                    reason: format!("bad capacitor name '{name}'"),
                })?;
                if tokens.len() != 5 || !tokens[4].starts_with("IC=") {
                    return Err(Error::NetlistParse {
                        line: line_no,
                        reason: "capacitor needs nodes, value and IC=".to_string(),
                    });
                }
                caps[k - 1] = Some(parse_value(tokens[3], line_no)?);
                v0[k - 1] = parse_value(&tokens[4][3..], line_no)?;
            }
            _ if name.starts_with('L') => {
                let k = name[1..].parse::<usize>().map_err(|_| Error::NetlistParse {
                    line: line_no,
                    reason: format!("bad inductor name '{name}'"),
                })?;
                tank_l[k - 1] = Some(parse_value(tokens[3], line_no)?);
            }
            _ if name.starts_with('F') => {
                let (k, l) = parse_pair(name, "F", line_no)?;
                skews[(k - 1, l - 1)] = parse_value(tokens[3], line_no)?;
            }
            _ if name.starts_with('G') => {
                if tokens.len() != 6 {
                    return Err(Error::NetlistParse {
                        line: line_no,
                        reason: "VCCS needs 4 nodes and a value".to_string(),
                    });
                }
                let (k, l) = parse_pair(name, "G", line_no)?;
                alpha[(k - 1, l - 1)] = parse_value(tokens[5], line_no)?;
            }
            _ => {
                return Err(Error::NetlistParse {
                    line: line_no,
                    reason: format!("unknown element '{name}'"),
                });
            }
        }
    }

    // Reassemble beta from the element inverse inductances, mirroring
    // beta_elements: symmetric part from bridges and shunts, antisymmetric
    // part from the F pairs.
    let mut beta = DMatrix::zeros(n, n);
    for k in 0..n {
        let mut diag = shunt_inv[k];
        for l in 0..n {
            if l == k {
                continue;
            }
            let g = if l > k { bridges[(k, l)] } else { bridges[(l, k)] };
            diag += g;
            let sym = -g;
            let skew = if l > k { skews[(k, l)] } else { -skews[(l, k)] };
            beta[(k, l)] = sym + skew;
        }
        beta[(k, k)] = diag;
    }

    let tanks: Vec<PortTank> = (0..n)
        .map(|k| {
            let cap = caps[k].ok_or_else(|| Error::NetlistParse {
                line: 0,
                reason: format!("missing capacitor C{}", k + 1),
            })?;
            PortTank::new(k + 1, tank_l[k], cap, v0[k])
        })
        .collect::<Result<_>>()?;
    let omega0_sq: Vec<f64> = tanks.iter().map(|t| t.omega0_sq()).collect();
    let flags = flags_for(&alpha, &beta, &tanks);
    Ok(CircuitDesign {
        tanks,
        interaction: InteractionNetwork { alpha, beta },
        omega0_sq,
        flags,
        strategy: "netlist".to_string(),
    })
}
