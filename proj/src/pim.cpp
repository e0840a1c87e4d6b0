#include "fexlab/pim.hpp"

#include <algorithm>
#include <stdexcept>

namespace fexlab {

Pim::Pim(PimConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.finite) {
        for (const auto& br : cfg_.branches)
            cache_.emplace(br.digit, br);
    }
}

const Branch* Pim::branch(Digit d) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(d);
    if (it != cache_.end()) return &it->second;
    if (cfg_.finite) return nullptr;
    auto made = cfg_.make_branch(d);
    if (!made) return nullptr;
    auto [pos, ok] = cache_.emplace(d, std::move(*made));
    return &pos->second;
}

bool Pim::digit_less(Digit d, Digit e) const {
    const Branch* bd = branch(d);
    const Branch* be = branch(e);
    if (!bd || !be) throw std::invalid_argument("Pim::digit_less: unknown digit");
    return Scalar::raw_less(bd->domain.lo(), be->domain.lo());
}

std::optional<Scalar> Pim::apply(const Scalar& x) const {
    auto r = apply_with_digit(x);
    if (!r) return std::nullopt;
    return r->second;
}

std::optional<std::pair<Digit, Scalar>> Pim::apply_with_digit(const Scalar& x) const {
    auto d = cfg_.partition.locate(x);
    if (!d) return std::nullopt;
    const Branch* br = branch(*d);
    if (!br) return std::nullopt;
    return std::make_pair(*d, br->forward(x));
}

Scalar Pim::inverse_branch(Digit d, const Scalar& y) const {
    const Branch* br = branch(d);
    if (!br) throw std::invalid_argument("Pim::inverse_branch: unknown digit");
    const Interval& hull = br->image_hull;
    if (y.compare(hull.lo()) < 0)
        return br->mono == Mono::TypeA ? br->domain.lo() : br->domain.hi();
    if (y.compare(hull.hi()) > 0)
        return br->mono == Mono::TypeA ? br->domain.hi() : br->domain.lo();
    return br->inverse(y);
}

PreimageList Pim::preimages(const Scalar& y, Digit digit_cap) const {
    PreimageList out;
    auto digits = digits_up_to(digit_cap, &out.truncated);
    for (Digit d : digits) {
        const Branch* br = branch(d);
        if (!br) continue;
        if (!br->image.contains(y)) continue;
        out.points.emplace_back(d, br->inverse(y));
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const auto& a, const auto& b) { return Scalar::raw_less(a.second, b.second); });
    return out;
}

Interval branch_image_of(const Branch& br, const Interval& J) {
    Scalar u = br.forward(J.lo());
    Scalar v = br.forward(J.hi());
    if (J.is_point()) return Interval::point(u);
    if (br.mono == Mono::TypeA) {
        auto img = Interval::make(u, v, J.lo_kind(), J.hi_kind());
        if (!img) return Interval::point(u);  // branch numerically flat on J
        return *img;
    }
    auto img = Interval::make(v, u, J.hi_kind(), J.lo_kind());
    if (!img) return Interval::point(v);
    return *img;
}

namespace {

bool mergeable(const Interval& a, const Interval& b) {
    // assumes a.lo <= b.lo
    int c = b.lo().compare(a.hi());
    if (c < 0) return true;
    if (c > 0) return false;
    return a.hi_kind() == Kind::Closed || b.lo_kind() == Kind::Closed;
}

Interval merge(const Interval& a, const Interval& b) {
    Scalar hi = a.hi();
    Kind hk = a.hi_kind();
    int c = b.hi().compare(a.hi());
    if (c > 0) {
        hi = b.hi();
        hk = b.hi_kind();
    } else if (c == 0 && b.hi_kind() == Kind::Closed) {
        hk = Kind::Closed;
    }
    Kind lk = a.lo_kind();
    if (b.lo().compare(a.lo()) == 0 && b.lo_kind() == Kind::Closed) lk = Kind::Closed;
    return Interval(a.lo(), hi, lk, hk);
}

}  // namespace

ImageList Pim::image_of_interval(const Interval& I, Digit digit_cap) const {
    ImageList out;
    bool cap_hit = false;
    auto digits = digits_up_to(digit_cap, &cap_hit);

    std::vector<Interval> pieces;  // I intersect Delta(d), in domain space
    std::vector<Interval> images;
    for (Digit d : digits) {
        const Branch* br = branch(d);
        if (!br) continue;
        auto J = intersect(I, br->domain);
        if (!J) continue;
        pieces.push_back(*J);
        images.push_back(branch_image_of(*br, *J));
    }

    // Lazy alphabets: flag when part of I with positive length was not covered.
    if (!cfg_.finite) {
        std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) {
            return Scalar::raw_less(a.lo(), b.lo());
        });
        Scalar cursor = I.lo();
        for (const auto& p : pieces) {
            if (p.lo().compare(cursor) > 0) out.truncated = true;
            if (p.hi().compare(cursor) > 0) cursor = p.hi();
        }
        if (I.hi().compare(cursor) > 0) out.truncated = true;
    }

    std::sort(images.begin(), images.end(), [](const Interval& a, const Interval& b) {
        if (Scalar::raw_less(a.lo(), b.lo())) return true;
        if (Scalar::raw_less(b.lo(), a.lo())) return false;
        return a.lo_kind() == Kind::Closed && b.lo_kind() == Kind::Open;
    });
    for (const auto& img : images) {
        if (!out.intervals.empty() && mergeable(out.intervals.back(), img))
            out.intervals.back() = merge(out.intervals.back(), img);
        else
            out.intervals.push_back(img);
    }
    return out;
}

}  // namespace fexlab
