#include <mmpfloer/svg.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mmpfloer::svg {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

// vertices in counterclockwise order around the centroid
std::vector<std::pair<double, double>> ordered_vertices(const polytope::Polytope& Q) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& v : polytope::vertices(Q))
        pts.emplace_back(to_double(v.point[0]), to_double(v.point[1]));
    double cx = 0, cy = 0;
    for (const auto& [x, y] : pts) {
        cx += x;
        cy += y;
    }
    cx /= double(pts.size());
    cy /= double(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
        return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
    });
    return pts;
}

}  // namespace

std::string render_toric_timeline(const polytope::Polytope& P) {
    if (P.dim != 2)
        throw std::invalid_argument("render_toric_timeline: only 2-dimensional polytopes");
    auto transitions = mmp::toric_transition_times(P);

    // panel k shows the polytope on the interval before transition k
    std::vector<Rational> cuts{Rational(0)};
    for (const auto& tr : transitions) cuts.push_back(tr.time);

    const double scale = 60.0, margin = 24.0, label_h = 36.0;
    auto bbox = ordered_vertices(P);
    double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
    for (const auto& [x, y] : bbox) {
        minx = std::min(minx, x);
        maxx = std::max(maxx, x);
        miny = std::min(miny, y);
        maxy = std::max(maxy, y);
    }
    double pw = (maxx - minx) * scale + 2 * margin;
    double ph = (maxy - miny) * scale + 2 * margin + label_h;
    size_t panels = transitions.size();
    if (panels == 0) panels = 1;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(pw * double(panels)) +
           "\" height=\"" + fmt(ph) + "\" font-family=\"monospace\" font-size=\"12\">\n";
    for (size_t k = 0; k < panels; ++k) {
        Rational t_mid = (cuts[k] + (k + 1 < cuts.size() ? cuts[k + 1] : cuts[k])) / 2;
        auto sh = polytope::shrink(P, t_mid);
        double ox = double(k) * pw + margin - minx * scale;
        double oy = margin + (maxy)*scale;  // y flipped
        auto map_x = [&](double x) { return ox + x * scale; };
        auto map_y = [&](double y) { return oy - y * scale; };

        out += "  <g>\n";
        if (sh.kind != polytope::ShrinkKind::Empty) {
            out += "    <polygon points=\"";
            bool first = true;
            for (const auto& [x, y] : ordered_vertices(sh.poly)) {
                if (!first) out += " ";
                out += fmt(map_x(x)) + "," + fmt(map_y(y));
                first = false;
            }
            out += "\" fill=\"#dce6f2\" stroke=\"#2b4a6f\" stroke-width=\"1.5\"/>\n";
        }
        std::string label = "start";
        if (k < transitions.size()) {
            const auto& tr = transitions[k];
            label = "t=" + rational_to_string(tr.time) + " " + mmp::kind_to_string(tr.kind);
            for (const auto& w : tr.witnesses) {
                if (const auto* tw = std::get_if<mmp::ToricWitness>(&w)) {
                    out += "    <circle cx=\"" + fmt(map_x(to_double(tw->point[0]))) +
                           "\" cy=\"" + fmt(map_y(to_double(tw->point[1]))) +
                           "\" r=\"3.5\" fill=\"#b03030\"/>\n";
                }
            }
        }
        out += "    <text x=\"" + fmt(double(k) * pw + margin) + "\" y=\"" +
               fmt(ph - label_h / 2.0) + "\">" + label + "</text>\n";
        out += "  </g>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace mmpfloer::svg
