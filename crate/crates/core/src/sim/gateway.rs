use serde::Serialize;

/// What a gateway did with one node's output for one generation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GatewayOutcome<P, D> {
    /// Payload of the first packet, if there was one.
    pub reference: Option<P>,
    pub kept: Vec<(P, D)>,
    pub dropped: Vec<(P, D)>,
    pub suspicious: bool,
}

/// Keeps the first payload of the stream and every later packet with the
/// same payload, whatever its destination tag; drops the rest. The node is
/// suspicious as soon as anything is dropped.
pub fn gateway_filter<P, D>(stream: impl IntoIterator<Item = (P, D)>) -> GatewayOutcome<P, D>
where
    P: PartialEq + Clone,
{
    let mut reference: Option<P> = None;
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for (payload, dest) in stream {
        match &reference {
            None => {
                reference = Some(payload.clone());
                kept.push((payload, dest));
            }
            Some(r) if *r == payload => kept.push((payload, dest)),
            Some(_) => dropped.push((payload, dest)),
        }
    }
    let suspicious = !dropped.is_empty();
    GatewayOutcome {
        reference,
        kept,
        dropped,
        suspicious,
    }
}
