#include "sparselab/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sparselab/averages.hpp"

namespace sparselab {

std::int64_t SparseEntry::major_size() const {
    std::int64_t n = 0;
    for (const auto& e : major_set) n += e.size();
    return n;
}

SparsityReport verify_sparsity(const SparseCollection& s, double c) {
    SparsityReport rep;
    auto fail = [&rep](std::string msg) {
        rep.ok = false;
        rep.violations.push_back(std::move(msg));
    };

    struct Piece {
        Interval range;
        std::size_t owner;
    };
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        const auto& e = s.entries[i];
        const Interval q = e.cube.points();
        std::int64_t prev_hi = q.lo;
        for (const auto& part : e.major_set) {
            if (part.empty()) continue;
            if (!q.contains(part)) fail("E_Q leaves Q for " + e.cube.to_string());
            if (part.lo < prev_hi) fail("E_Q ranges overlap or are unsorted for " + e.cube.to_string());
            prev_hi = part.hi;
            pieces.push_back({part, i});
        }
        if (static_cast<double>(e.major_size()) < c * static_cast<double>(q.size())) {
            fail("|E_Q| < c|Q| for " + e.cube.to_string());
        }
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.range.lo < b.range.lo; });
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (pieces[i].range.lo < pieces[i - 1].range.hi && pieces[i].owner != pieces[i - 1].owner) {
            fail("E_Q of " + s.entries[pieces[i - 1].owner].cube.to_string() + " and " +
                 s.entries[pieces[i].owner].cube.to_string() + " intersect");
        }
    }
    return rep;
}

double sparse_form(const SparseCollection& s, const Signal& f, const Signal& g, SparseFormParams params) {
    if (const auto rep = verify_sparsity(s); !rep.ok) {
        throw std::invalid_argument("sparse_form: collection is not sparse: " + rep.violations.front());
    }
    if (s.empty()) return 0.0;
    const PowerSums pf(f, params.r);
    const PowerSums pg(g, params.s);
    double total = 0.0;
    for (const auto& e : s.entries) {
        const Interval t = e.cube.triple();
        total += pf.average(t) * pg.average(t) * static_cast<double>(e.cube.side());
    }
    return total;
}

namespace {

class Builder {
public:
    Builder(const PowerSums& pf, const PowerSums& pg, double threshold)
        : pf_(pf), pg_(pg), threshold_(threshold) {}

    // Returns false if some cube's stopping union exceeds half its size.
    bool run(const DyadicCube& root, SparseCollection& out) {
        std::vector<DyadicCube> stack{root};
        while (!stack.empty()) {
            const DyadicCube q = stack.back();
            stack.pop_back();
            std::vector<DyadicCube> stops;
            collect_stops(q, stops);
            std::int64_t covered = 0;
            for (const auto& s : stops) covered += s.side();
            if (2 * covered > q.side()) return false;

            std::sort(stops.begin(), stops.end(),
                      [](const DyadicCube& a, const DyadicCube& b) { return a.points().lo < b.points().lo; });
            SparseEntry entry{q, {}};
            std::int64_t cursor = q.points().lo;
            for (const auto& s : stops) {
                const Interval pts = s.points();
                if (pts.lo > cursor) entry.major_set.push_back({cursor, pts.lo});
                cursor = pts.hi;
            }
            if (cursor < q.points().hi) entry.major_set.push_back({cursor, q.points().hi});
            out.entries.push_back(std::move(entry));
            for (const auto& s : stops) stack.push_back(s);
        }
        return true;
    }

private:
    void collect_stops(const DyadicCube& q, std::vector<DyadicCube>& stops) const {
        const Interval t = q.triple();
        const double tf = threshold_ * pf_.mean_power(t);
        const double tg = threshold_ * pg_.mean_power(t);
        std::vector<DyadicCube> pending;
        if (q.level > 0) {
            const auto ch = q.children();
            pending.assign(ch.begin(), ch.end());
        }
        while (!pending.empty()) {
            const DyadicCube c = pending.back();
            pending.pop_back();
            const Interval ct = c.triple();
            if (pf_.mean_power(ct) > tf || pg_.mean_power(ct) > tg) {
                stops.push_back(c);
            } else if (c.level > 0) {
                const auto ch = c.children();
                pending.insert(pending.end(), ch.begin(), ch.end());
            }
        }
    }

    const PowerSums& pf_;
    const PowerSums& pg_;
    double threshold_;  // C0^r, compared against means of |f|^r
};

}  // namespace

SparseCollection build_sparse_collection(const Signal& f, const Signal& g, double r, double c0) {
    if (!(r >= 1.0)) throw std::invalid_argument("build_sparse_collection: r must be >= 1");
    if (!(c0 > 1.0)) throw std::invalid_argument("build_sparse_collection: C0 must exceed 1");
    const auto sf = f.support();
    const auto sg = g.support();
    SparseCollection out;
    out.c0 = c0;
    if (!sf && !sg) return out;
    const Interval span = sf && sg ? sf->hull(*sg) : (sf ? *sf : *sg);
    const DyadicCube root = smallest_cube_containing(span);

    const PowerSums pf(f, r);
    const PowerSums pg(g, r);
    for (int attempt = 0; attempt < 64; ++attempt) {
        out.entries.clear();
        out.c0 = c0;
        Builder b(pf, pg, std::pow(c0, r));
        if (b.run(root, out)) return out;
        c0 *= 2.0;
    }
    throw std::runtime_error("build_sparse_collection: stopping constant diverged");
}

DominationResult domination_ratio(const LinearOperator& apply_t, const Signal& f, const Signal& g, double r,
                                  double c0) {
    DominationResult res;
    res.pairing = std::abs(bilinear_pairing(apply_t(f), g));
    const SparseCollection s = build_sparse_collection(f, g, r, c0);
    res.c0 = s.c0;
    res.cubes = s.size();
    res.form = sparse_form(s, f, g, {r, r});
    if (res.form == 0.0) {
        if (res.pairing != 0.0) throw std::domain_error("domination_ratio: sparse form vanishes");
        return res;
    }
    res.ratio = res.pairing / res.form;
    return res;
}

}  // namespace sparselab
