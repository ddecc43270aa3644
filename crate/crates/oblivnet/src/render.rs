//! SVG rendering of comparator networks: horizontal wires top to bottom in
//! index order, one vertical connector per gate, gates placed by the same
//! greedy layering that [`crate::network::Network::depth`] uses. Output is
//! pure text with integer coordinates, so rendering is deterministic.

use std::fmt::Write;

use crate::network::{GateKind, Network};

const MARGIN: usize = 24;
const WIRE_SPACING: usize = 24;
const LAYER_SPACING: usize = 24;
const DOT_RADIUS: usize = 3;

pub fn render_svg(net: &Network) -> String {
    let layers = net.layer_assignment();
    let depth = net.depth();
    let width = 2 * MARGIN + (depth + 1) * LAYER_SPACING;
    let height = 2 * MARGIN + net.width().saturating_sub(1) * WIRE_SPACING;
    let wire_y = |w: usize| MARGIN + w * WIRE_SPACING;
    let layer_x = |l: usize| MARGIN + (l + 1) * LAYER_SPACING;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    for w in 0..net.width() {
        let y = wire_y(w);
        let _ = writeln!(
            svg,
            "  <line x1=\"{MARGIN}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"black\" stroke-width=\"1\"/>",
            width - MARGIN
        );
    }
    for (gate, layer) in net.gates().iter().zip(layers) {
        let x = layer_x(layer);
        let y1 = wire_y(gate.lo());
        let y2 = wire_y(gate.hi());
        match gate.kind() {
            GateKind::Forward => {
                let _ = writeln!(
                    svg,
                    "  <line x1=\"{x}\" y1=\"{y1}\" x2=\"{x}\" y2=\"{y2}\" stroke=\"black\" stroke-width=\"2\"/>"
                );
                let _ = writeln!(
                    svg,
                    "  <circle cx=\"{x}\" cy=\"{y1}\" r=\"{DOT_RADIUS}\" fill=\"black\"/>"
                );
                let _ = writeln!(
                    svg,
                    "  <circle cx=\"{x}\" cy=\"{y2}\" r=\"{DOT_RADIUS}\" fill=\"black\"/>"
                );
            }
            GateKind::Reverse => {
                // arrowhead marks the wire that receives the maximum
                let _ = writeln!(
                    svg,
                    "  <line x1=\"{x}\" y1=\"{y1}\" x2=\"{x}\" y2=\"{y2}\" stroke=\"black\" stroke-width=\"2\"/>"
                );
                let _ = writeln!(
                    svg,
                    "  <circle cx=\"{x}\" cy=\"{y2}\" r=\"{DOT_RADIUS}\" fill=\"black\"/>"
                );
                let tip = y1;
                let base = y1 + 2 * DOT_RADIUS;
                let _ = writeln!(
                    svg,
                    "  <polygon points=\"{x},{tip} {},{base} {},{base}\" fill=\"black\"/>",
                    x - DOT_RADIUS,
                    x + DOT_RADIUS
                );
            }
            GateKind::Swap => {
                let _ = writeln!(
                    svg,
                    "  <line x1=\"{x}\" y1=\"{y1}\" x2=\"{x}\" y2=\"{y2}\" stroke=\"black\" stroke-width=\"2\" stroke-dasharray=\"3 2\"/>"
                );
                for y in [y1, y2] {
                    let _ = writeln!(
                        svg,
                        "  <circle cx=\"{x}\" cy=\"{y}\" r=\"{DOT_RADIUS}\" fill=\"white\" stroke=\"black\"/>"
                    );
                }
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Gate;

    #[test]
    fn single_comparator_structure() {
        let mut net = Network::new(2);
        net.push(Gate::forward(0, 1));
        let svg = render_svg(&net);
        assert_eq!(svg.matches("<line ").count(), 3); // 2 wires + 1 connector
        assert_eq!(svg.matches("<circle ").count(), 2);
        assert!(svg.starts_with("<svg "));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let mut net = Network::new(4);
        net.push(Gate::forward(0, 2));
        net.push(Gate::swap(1, 3));
        net.push(Gate::reverse(0, 1));
        assert_eq!(render_svg(&net), render_svg(&net));
    }

    #[test]
    fn element_counts_scale_with_gates() {
        let mut net = Network::new(3);
        net.push(Gate::forward(0, 1));
        net.push(Gate::forward(1, 2));
        net.push(Gate::swap(0, 2));
        let svg = render_svg(&net);
        assert_eq!(svg.matches("<line ").count(), 3 + 3);
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
    }

    #[test]
    fn outer_zig_slice_layout_counts() {
        use crate::halver::HalverSpec;
        use crate::zigzag::{emit_zigzag_network_annotated, Phase, ZigZagConfig};

        let cfg = ZigZagConfig::new(16, HalverSpec::Exact).unwrap();
        let (net, spans) = emit_zigzag_network_annotated(&cfg).unwrap();
        let span = spans
            .iter()
            .find(|s| s.level == 2 && s.phase == Phase::Zig)
            .unwrap();
        let mut slice = Network::new(16);
        for g in &net.gates()[span.gates.clone()] {
            slice.push(*g);
        }
        let svg = render_svg(&slice);
        let comparators = 3 * 19; // three pair sorts of 8 wires
        let swaps = 3 * 4; // three four-wide inner zig-zags
        assert_eq!(svg.matches("<line ").count(), 16 + comparators + swaps);
        assert_eq!(svg.matches("stroke-dasharray").count(), swaps);
        assert_eq!(svg.matches("fill=\"black\"").count(), 2 * comparators);
        assert_eq!(svg.matches("fill=\"white\"").count(), 2 * swaps);
    }
}
