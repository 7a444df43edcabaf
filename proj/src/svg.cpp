#include "bergspec/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace bergspec {

namespace {

constexpr char const* fill_colour = "#1f4e79";

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s = buf;
    return s == "-0.000" ? "0.000" : s;
}

std::string label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

std::string escape(std::string const& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Canvas {
    Viewport v;
    double x(double re) const { return (re - v.re_min) / (v.re_max - v.re_min) * v.width; }
    double y(double im) const { return (v.im_max - im) / (v.im_max - v.im_min) * v.height; }
    double sx() const { return v.width / (v.re_max - v.re_min); }
    double sy() const { return v.height / (v.im_max - v.im_min); }
    double clamp_x(double re) const { return std::clamp(x(re), -1.0, v.width + 1.0); }
};

std::string paint(Certainty c) {
    switch (c) {
        case Certainty::certified: return std::string("fill=\"") + fill_colour + "\" fill-opacity=\"0.8\"";
        case Certainty::boundary_unresolved: return std::string("fill=\"") + fill_colour + "\" fill-opacity=\"0.4\"";
        case Certainty::unknown_question2: return "fill=\"url(#hatch)\"";
    }
    return "";
}

std::string stroke(Certainty c) {
    switch (c) {
        case Certainty::certified: return std::string("stroke=\"") + fill_colour + "\" stroke-opacity=\"0.8\"";
        case Certainty::boundary_unresolved: return std::string("stroke=\"") + fill_colour + "\" stroke-opacity=\"0.4\"";
        case Certainty::unknown_question2: return "stroke=\"#b03a2e\" stroke-dasharray=\"4 3\"";
    }
    return "";
}

std::string ellipse_path(Canvas const& cv, double r) {
    double cx = cv.x(0.0), cy = cv.y(0.0), rx = r * cv.sx(), ry = r * cv.sy();
    std::string a = " A " + fmt(rx) + " " + fmt(ry) + " 0 1 0 ";
    return "M " + fmt(cx - rx) + " " + fmt(cy) + a + fmt(cx + rx) + " " + fmt(cy) + a + fmt(cx - rx) + " " + fmt(cy) +
           " Z";
}

void rect(std::ostream& out, Canvas const& cv, Component const& c, double lo, double hi, bool open) {
    double x0 = lo == -INFINITY ? -1.0 : cv.clamp_x(lo);
    double x1 = cv.clamp_x(hi);
    if (x1 <= x0) x1 = x0 + 1.0;
    out << "  <rect class=\"" << to_string(c.kind) << " " << to_string(c.certainty) << "\" x=\"" << fmt(x0)
        << "\" y=\"0.000\" width=\"" << fmt(x1 - x0) << "\" height=\"" << fmt(cv.v.height) << "\" " << paint(c.certainty);
    if (open) out << " stroke=\"" << fill_colour << "\" stroke-dasharray=\"6 4\"";
    out << "/>\n";
}

void draw(std::ostream& out, Canvas const& cv, Component const& c) {
    std::string cls = std::string(to_string(c.kind)) + " " + to_string(c.certainty);
    switch (c.kind) {
        case ComponentKind::half_plane_left: rect(out, cv, c, -INFINITY, c.hi.value(), false); break;
        case ComponentKind::vstrip: rect(out, cv, c, c.lo.value(), c.hi.value(), false); break;
        case ComponentKind::open_vstrip_interior: rect(out, cv, c, c.lo.value(), c.hi.value(), true); break;
        case ComponentKind::vline: {
            double x = cv.x(c.hi.value());
            out << "  <line class=\"" << cls << "\" x1=\"" << fmt(x) << "\" y1=\"0.000\" x2=\"" << fmt(x) << "\" y2=\""
                << fmt(cv.v.height) << "\" stroke-width=\"1\" " << stroke(c.certainty) << "/>\n";
            break;
        }
        case ComponentKind::disk:
            out << "  <path class=\"" << cls << "\" d=\"" << ellipse_path(cv, c.hi.value()) << "\" " << paint(c.certainty)
                << "/>\n";
            break;
        case ComponentKind::closed_annulus:
        case ComponentKind::open_annulus_interior: {
            out << "  <path class=\"" << cls << "\" fill-rule=\"evenodd\" d=\"" << ellipse_path(cv, c.hi.value());
            if (c.lo.value() > 0) out << " " << ellipse_path(cv, c.lo.value());
            out << "\" " << paint(c.certainty);
            if (c.kind == ComponentKind::open_annulus_interior) out << " stroke=\"#b03a2e\" stroke-dasharray=\"6 4\"";
            out << "/>\n";
            break;
        }
        case ComponentKind::circle:
            out << "  <path class=\"" << cls << "\" d=\"" << ellipse_path(cv, c.hi.value())
                << "\" fill=\"none\" stroke-width=\"1\" " << stroke(c.certainty) << "/>\n";
            break;
    }
}

}  // namespace

Viewport generator_viewport(SpectralRegion const& region, int width, int height) {
    double lo = INFINITY, hi = -INFINITY;
    for (Component const& c : region.components()) {
        for (ExtReal x : {c.lo, c.hi}) {
            if (x.is_finite() && c.kind != ComponentKind::disk && c.kind != ComponentKind::closed_annulus &&
                c.kind != ComponentKind::open_annulus_interior && c.kind != ComponentKind::circle) {
                lo = std::min(lo, x.value());
                hi = std::max(hi, x.value());
            }
        }
    }
    if (!(lo <= hi)) lo = hi = 0.0;
    lo -= 1.0;
    hi += 1.0;
    if (hi - lo < 4.0) {
        double mid = 0.5 * (lo + hi);
        lo = mid - 2.0;
        hi = mid + 2.0;
    }
    double half = 0.5 * (hi - lo) * height / width;
    return {lo, hi, -half, half, width, height};
}

Viewport operator_viewport(SpectralRegion const& region, int width, int height) {
    double r = 0.0;
    for (Component const& c : region.components())
        if (c.hi.is_finite()) r = std::max(r, c.hi.value());
    if (r <= 0.0) r = 1.0;
    double half_h = 1.25 * r;
    double half_w = half_h * width / height;
    return {-half_w, half_w, -half_h, half_h, width, height};
}

std::string render_svg(SpectralRegion const& region, Viewport const& view, std::string const& title) {
    if (!(view.re_max > view.re_min) || !(view.im_max > view.im_min) || view.width <= 0 || view.height <= 0)
        throw std::invalid_argument("render_svg: viewport must be a non-empty finite box");
    Canvas cv{view};
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << view.width << "\" height=\""
        << view.height << "\" viewBox=\"0 0 " << view.width << " " << view.height << "\">\n";
    out << "  <defs>\n"
           "    <pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"8\" height=\"8\" "
           "patternTransform=\"rotate(45)\">\n"
           "      <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#b03a2e\" stroke-width=\"2\"/>\n"
           "    </pattern>\n"
           "  </defs>\n";
    out << "  <rect class=\"background\" x=\"0\" y=\"0\" width=\"" << view.width << "\" height=\"" << view.height
        << "\" fill=\"#ffffff\"/>\n";
    for (Component const& c : region.components()) draw(out, cv, c);

    // Axes through the origin when visible.
    if (view.im_min <= 0 && 0 <= view.im_max)
        out << "  <line class=\"axis\" x1=\"0.000\" y1=\"" << fmt(cv.y(0)) << "\" x2=\"" << fmt(view.width) << "\" y2=\""
            << fmt(cv.y(0)) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    if (view.re_min <= 0 && 0 <= view.re_max)
        out << "  <line class=\"axis\" x1=\"" << fmt(cv.x(0)) << "\" y1=\"0.000\" x2=\"" << fmt(cv.x(0)) << "\" y2=\""
            << fmt(view.height) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    out << "  <text class=\"label\" x=\"4\" y=\"" << view.height - 6 << "\" font-family=\"monospace\" font-size=\"12\">Re "
        << label(view.re_min) << "</text>\n";
    out << "  <text class=\"label\" x=\"" << view.width - 4
        << "\" y=\"" << view.height - 6 << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\">Re "
        << label(view.re_max) << "</text>\n";
    if (!title.empty())
        out << "  <text class=\"title\" x=\"" << view.width / 2
            << "\" y=\"18\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"14\">" << escape(title)
            << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace bergspec
