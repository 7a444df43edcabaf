#include "bergspec/grid.hpp"

#include <cmath>

namespace bergspec {

namespace {
double radical_inverse(int index, int base) {
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * (index % base);
        index /= base;
        f /= base;
    }
    return result;
}
}  // namespace

std::vector<cplx> halton_disk(int count, double radius) {
    std::vector<cplx> points;
    points.reserve(count);
    for (int k = 1; k <= count; ++k) {
        double r = radius * std::sqrt(radical_inverse(k, 2));
        double theta = 2.0 * pi * radical_inverse(k, 3);
        points.push_back(std::polar(r, theta));
    }
    return points;
}

std::vector<cplx> circle_points(int count, double radius) {
    std::vector<cplx> points;
    points.reserve(count);
    for (int k = 0; k < count; ++k) points.push_back(std::polar(radius, 2.0 * pi * k / count));
    return points;
}

}  // namespace bergspec
