#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "coopnet/channel.hpp"
#include "coopnet/coalition.hpp"
#include "coopnet/errors.hpp"
#include "coopnet/simplex.hpp"

namespace coopnet {

/// Receiving node of a decoder bound in the clustered uplink: either the
/// common destination or one of the cooperating transmitters acting as a
/// relay decoder for its partners' cooperative streams.
struct PdfReceiver {
    int link = -1;  // -1 encodes the destination
    static constexpr PdfReceiver destination() { return PdfReceiver{-1}; }
    static constexpr PdfReceiver member(std::size_t k) {
        return PdfReceiver{static_cast<int>(k)};
    }
    constexpr bool is_destination() const { return link < 0; }
};

/// Per-user three-way split of transmit power: a direct stream decoded only
/// by the destination, a cooperative stream decoded by partner users, and a
/// common stream that all members carry and the destination combines
/// coherently. Vectors are indexed by link; entries of non-members must be 0.
struct PdfPowerSplit {
    std::vector<double> p_direct;
    std::vector<double> p_coop;
    std::vector<double> p_common;

    static PdfPowerSplit zero(std::size_t k) {
        return {std::vector<double>(k, 0.0), std::vector<double>(k, 0.0),
                std::vector<double>(k, 0.0)};
    }
};

namespace detail {

inline void check_mac_coalition(const ClusteredMac& mac, Coalition s, const char* who) {
    if (s == 0) throw InvariantViolation(std::string(who) + ": empty coalition");
    if (mac.K == 0 || mac.K > kMaxPlayers)
        throw InvariantViolation(std::string(who) + ": channel has invalid user count");
    if (s >= (1u << mac.K))
        throw InvariantViolation(std::string(who) + ": coalition outside the channel");
}

inline void check_split(const ClusteredMac& mac, Coalition s, const PdfPowerSplit& split,
                        const char* who) {
    const std::vector<double>* parts[3] = {&split.p_direct, &split.p_coop, &split.p_common};
    for (const auto* p : parts)
        if (p->size() != mac.K)
            throw InvariantViolation(std::string(who) + ": power split must have K entries");
    for (std::size_t k = 0; k < mac.K; ++k) {
        const double d = split.p_direct[k], c = split.p_coop[k], u = split.p_common[k];
        for (double v : {d, c, u})
            if (!(v >= 0.0) || !std::isfinite(v))
                throw InvariantViolation(std::string(who) + ": split powers must be finite and >= 0");
        if (!contains(s, k)) {
            if (d != 0.0 || c != 0.0 || u != 0.0)
                throw InvariantViolation(std::string(who) + ": non-member " + std::to_string(k) +
                                         " carries power in the split");
            continue;
        }
        if (d + c + u > mac.powers[k] * (1.0 + 1e-9) + 1e-12)
            throw InvariantViolation(std::string(who) + ": split at user " + std::to_string(k) +
                                     " exceeds the power budget");
    }
}

}  // namespace detail

/// Total interference-plus-noise power seen at a receiving node when every
/// user outside the coalition transmits independent full-power noise.
/// Receiver noise is normalized to unit power, so with no outsiders J = 1.
inline double jamming_level(const ClusteredMac& mac, Coalition s, PdfReceiver r) {
    detail::check_mac_coalition(mac, s, "jamming_level");
    if (!r.is_destination() && !contains(s, static_cast<std::size_t>(r.link)))
        throw InvariantViolation("jamming_level: receiver must be the destination or a member");
    double j = 1.0;
    for (std::size_t k = 0; k < mac.K; ++k) {
        if (contains(s, k)) continue;
        const double gain =
            r.is_destination() ? mac.hd[k] : mac.hu[static_cast<std::size_t>(r.link)][k];
        j += gain * mac.powers[k];
    }
    return j;
}

/// Destination bound on the direct streams of sub-coalition G: the direct
/// powers are received over the downlink gains against the destination's
/// interference-plus-noise floor.
inline double pdf_bound_B1(const ClusteredMac& mac, Coalition s, Coalition g,
                           const PdfPowerSplit& split) {
    detail::check_mac_coalition(mac, s, "pdf_bound_B1");
    if (g == 0 || (g & ~s) != 0)
        throw InvariantViolation("pdf_bound_B1: G must be a nonempty subset of the coalition");
    detail::check_split(mac, s, split, "pdf_bound_B1");
    const double jd = jamming_level(mac, s, PdfReceiver::destination());
    double sig = 0.0;
    for (std::size_t i : members(g)) sig += mac.hd[i] * split.p_direct[i];
    return std::log2(1.0 + sig / jd);
}

/// Relay-decoder bound on the cooperative streams of G for one explicit
/// partition of G into blocks with one decoding member per block. Each
/// decoder hears its block's cooperative powers over the inter-user gains,
/// against its own jamming floor plus the direct streams of every other
/// member (which it does not decode).
inline double pdf_bound_B2(const ClusteredMac& mac, Coalition s, Coalition g,
                           const std::vector<Coalition>& blocks,
                           const std::vector<std::size_t>& decoders,
                           const PdfPowerSplit& split) {
    detail::check_mac_coalition(mac, s, "pdf_bound_B2");
    if (g == 0 || (g & ~s) != 0)
        throw InvariantViolation("pdf_bound_B2: G must be a nonempty subset of the coalition");
    detail::check_split(mac, s, split, "pdf_bound_B2");
    if (blocks.empty() || blocks.size() != decoders.size())
        throw InvariantViolation("pdf_bound_B2: need one decoder per partition block");
    Coalition covered = 0;
    for (Coalition b : blocks) {
        if (b == 0 || (b & ~g) != 0 || (b & covered) != 0)
            throw InvariantViolation("pdf_bound_B2: blocks must partition G");
        covered |= b;
    }
    if (covered != g) throw InvariantViolation("pdf_bound_B2: blocks must partition G");

    double total = 0.0;
    for (std::size_t n = 0; n < blocks.size(); ++n) {
        const std::size_t m = decoders[n];
        if (!contains(s, m))
            throw InvariantViolation("pdf_bound_B2: decoder " + std::to_string(m) +
                                     " is not a coalition member");
        if (contains(blocks[n], m))
            throw InvalidDecoder("pdf_bound_B2: decoder " + std::to_string(m) +
                                 " cannot decode its own block");
        double denom = jamming_level(mac, s, PdfReceiver::member(m));
        for (std::size_t j : members(s))
            if (j != m) denom += mac.hu[m][j] * split.p_direct[j];
        double sig = 0.0;
        for (std::size_t i : members(blocks[n])) sig += mac.hu[m][i] * split.p_coop[i];
        total += std::log2(1.0 + sig / denom);
    }
    return total;
}

/// The tightest relay-decoder bound on G's cooperative streams: minimum of
/// pdf_bound_B2 over every partition of G and every valid decoder choice.
/// Blocks whose complement within the coalition is empty admit no decoder,
/// so such partitions are skipped (only possible when G is the whole
/// coalition and a block swallows it, which a finer partition always fixes
/// for two or more members). A lone user has no cooperative partner: its
/// bound is 0 and any cooperative power is rejected.
inline double pdf_min_B2(const ClusteredMac& mac, Coalition s, Coalition g,
                         const PdfPowerSplit& split) {
    detail::check_mac_coalition(mac, s, "pdf_min_B2");
    if (g == 0 || (g & ~s) != 0)
        throw InvariantViolation("pdf_min_B2: G must be a nonempty subset of the coalition");
    if (coalition_size(s) > 6)
        throw KTooLarge("pdf_min_B2: partition enumeration capped at coalitions of 6 users");
    detail::check_split(mac, s, split, "pdf_min_B2");

    const std::vector<std::size_t> s_members = members(s);
    if (s_members.size() == 1 && g == s) {
        if (split.p_coop[s_members[0]] > 0.0)
            throw NoValidDecoder("pdf_min_B2: a lone user has no partner to decode its "
                                 "cooperative stream; set its cooperative power to 0");
        return 0.0;
    }

    // Per-candidate-decoder noise floor: jamming plus other members' direct
    // streams. Independent of the partition, so computed once.
    std::vector<double> denom(mac.K, 0.0);
    for (std::size_t m : s_members) {
        denom[m] = jamming_level(mac, s, PdfReceiver::member(m));
        for (std::size_t j : s_members)
            if (j != m) denom[m] += mac.hu[m][j] * split.p_direct[j];
    }

    const std::vector<std::size_t> g_members = members(g);
    double best = std::numeric_limits<double>::infinity();
    // Partitions of G are enumerated through index partitions of 0..|G|-1;
    // the minimum over decoder choices separates per block, so each block
    // independently takes its cheapest decoder.
    for_each_partition(g_members.size(), [&](const CoalitionStructure& idx_blocks) {
        double total = 0.0;
        for (Coalition idx_block : idx_blocks) {
            Coalition block = 0;
            for (std::size_t i : members(idx_block)) block |= (1u << g_members[i]);
            double block_best = std::numeric_limits<double>::infinity();
            for (std::size_t m : s_members) {
                if (contains(block, m)) continue;
                double sig = 0.0;
                for (std::size_t i : members(block)) sig += mac.hu[m][i] * split.p_coop[i];
                block_best = std::min(block_best, std::log2(1.0 + sig / denom[m]));
            }
            if (block_best == std::numeric_limits<double>::infinity()) {
                total = std::numeric_limits<double>::infinity();  // block has no decoder
                break;
            }
            total += block_best;
        }
        best = std::min(best, total);
    });
    if (best == std::numeric_limits<double>::infinity())
        throw NoValidDecoder("pdf_min_B2: no partition of G admits decoders");
    return best;
}

/// Destination bound on the coalition's total rate: all direct and
/// cooperative powers add non-coherently, while the shared common stream
/// adds amplitude-wise across members before squaring (coherent combining).
inline double pdf_dest_sum_bound(const ClusteredMac& mac, Coalition s,
                                 const PdfPowerSplit& split) {
    detail::check_mac_coalition(mac, s, "pdf_dest_sum_bound");
    detail::check_split(mac, s, split, "pdf_dest_sum_bound");
    const double jd = jamming_level(mac, s, PdfReceiver::destination());
    double direct = 0.0;
    double amp = 0.0;
    for (std::size_t k : members(s)) {
        direct += mac.hd[k] * (split.p_direct[k] + split.p_coop[k]);
        amp += std::sqrt(mac.hd[k] * split.p_common[k]);
    }
    return std::log2(1.0 + (direct + amp * amp) / jd);
}

namespace detail {

/// One face a.r <= b of a rate polytope over the coalition's coordinates.
struct RateFace {
    std::vector<double> a;
    double b = 0.0;
};

/// Rate polytope of one power split, in |S| coordinates ordered by ascending
/// member link: every nonempty sub-coalition's rate sum is capped by its
/// direct-stream bound plus its tightest cooperative-decoder bound, and the
/// full-coalition row additionally by the destination sum bound.
inline std::vector<RateFace> split_faces(const ClusteredMac& mac, Coalition s,
                                         const PdfPowerSplit& split) {
    const std::vector<std::size_t> mem = members(s);
    const std::size_t dim = mem.size();
    std::vector<RateFace> faces;
    const Coalition rel_full = grand_coalition(dim);
    for (Coalition rel = 1; rel <= rel_full; ++rel) {
        Coalition g = 0;
        for (std::size_t i = 0; i < dim; ++i)
            if (contains(rel, i)) g |= (1u << mem[i]);
        double rhs = pdf_bound_B1(mac, s, g, split) + pdf_min_B2(mac, s, g, split);
        if (rel == rel_full) rhs = std::min(rhs, pdf_dest_sum_bound(mac, s, split));
        RateFace f;
        f.a.assign(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            if (contains(rel, i)) f.a[i] = 1.0;
        f.b = rhs;
        faces.push_back(std::move(f));
    }
    for (std::size_t i = 0; i < dim; ++i) {  // coordinate nonnegativity
        RateFace f;
        f.a.assign(dim, 0.0);
        f.a[i] = -1.0;
        f.b = 0.0;
        faces.push_back(std::move(f));
    }
    return faces;
}

/// Vertices of the polytope {r : a.r <= b for every face}, dim <= 3, found
/// by intersecting every dim-subset of faces and keeping feasible points.
inline std::vector<std::vector<double>> face_vertices(const std::vector<RateFace>& faces,
                                                      std::size_t dim) {
    std::vector<std::vector<double>> verts;
    const std::size_t n = faces.size();
    std::vector<std::size_t> pick(dim);
    const auto feasible = [&](const std::vector<double>& r) {
        for (const RateFace& f : faces) {
            double lhs = 0.0;
            for (std::size_t i = 0; i < dim; ++i) lhs += f.a[i] * r[i];
            if (lhs > f.b + 1e-9 * (1.0 + std::fabs(f.b))) return false;
        }
        return true;
    };
    const auto push_unique = [&](const std::vector<double>& r) {
        for (const auto& v : verts) {
            double d = 0.0;
            for (std::size_t i = 0; i < dim; ++i) d = std::max(d, std::fabs(v[i] - r[i]));
            if (d < 1e-9) return;
        }
        verts.push_back(r);
    };

    const auto solve_pick = [&]() {
        // Gaussian elimination on the dim x dim system a_pick . r = b_pick.
        std::vector<std::vector<double>> m(dim, std::vector<double>(dim + 1, 0.0));
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) m[i][j] = faces[pick[i]].a[j];
            m[i][dim] = faces[pick[i]].b;
        }
        for (std::size_t col = 0; col < dim; ++col) {
            std::size_t piv = col;
            for (std::size_t i = col + 1; i < dim; ++i)
                if (std::fabs(m[i][col]) > std::fabs(m[piv][col])) piv = i;
            if (std::fabs(m[piv][col]) < 1e-12) return;  // degenerate pick
            std::swap(m[col], m[piv]);
            for (std::size_t i = 0; i < dim; ++i) {
                if (i == col) continue;
                const double f = m[i][col] / m[col][col];
                for (std::size_t j = col; j <= dim; ++j) m[i][j] -= f * m[col][j];
            }
        }
        std::vector<double> r(dim);
        for (std::size_t i = 0; i < dim; ++i) r[i] = m[i][dim] / m[i][i];
        for (double& x : r)
            if (std::fabs(x) < 1e-12 || (x < 0.0 && x > -1e-9)) x = 0.0;
        if (feasible(r)) push_unique(r);
    };

    // all dim-subsets of the face list
    if (dim == 1) {
        for (pick[0] = 0; pick[0] < n; ++pick[0]) solve_pick();
    } else if (dim == 2) {
        for (pick[0] = 0; pick[0] < n; ++pick[0])
            for (pick[1] = pick[0] + 1; pick[1] < n; ++pick[1]) solve_pick();
    } else {
        for (pick[0] = 0; pick[0] < n; ++pick[0])
            for (pick[1] = pick[0] + 1; pick[1] < n; ++pick[1])
                for (pick[2] = pick[1] + 1; pick[2] < n; ++pick[2]) solve_pick();
    }
    return verts;
}

/// Deterministic fan of unit weight vectors over the nonnegative orthant.
inline std::vector<std::vector<double>> weight_fan(std::size_t dim, std::size_t count) {
    std::vector<std::vector<double>> fan;
    if (dim == 1) {
        fan.push_back({1.0});
        return fan;
    }
    const double half_pi = std::acos(0.0);
    if (dim == 2) {
        const std::size_t n = std::max<std::size_t>(count, 2);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = half_pi * static_cast<double>(i) / static_cast<double>(n - 1);
            fan.push_back({std::cos(t), std::sin(t)});
        }
        return fan;
    }
    // dim == 3: polar/azimuth grid over the octant, deduplicated at the pole
    std::size_t m = 2;
    while (m * m - m + 1 < count) ++m;
    for (std::size_t i = 0; i < m; ++i) {
        const double th = half_pi * static_cast<double>(i) / static_cast<double>(m - 1);
        for (std::size_t j = 0; j < m; ++j) {
            const double ph = half_pi * static_cast<double>(j) / static_cast<double>(m - 1);
            std::vector<double> w = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                     std::cos(th)};
            bool dup = false;
            for (const auto& q : fan) {
                double d = 0.0;
                for (std::size_t c = 0; c < 3; ++c) d = std::max(d, std::fabs(q[c] - w[c]));
                if (d < 1e-12) {
                    dup = true;
                    break;
                }
            }
            if (!dup) fan.push_back(std::move(w));
        }
    }
    return fan;
}

}  // namespace detail

/// Sampled description of an achievable rate region: a cloud of achievable
/// points plus, for each weight direction of a fan, the sampled point
/// maximizing that weighted sum of rates.
struct RateRegionSamples {
    std::size_t dim = 0;
    std::vector<std::size_t> members;  // ascending link indices; coordinate order

    struct BoundarySample {
        std::vector<double> weight;
        std::vector<double> rates;
    };
    std::vector<std::vector<double>> points;
    std::vector<BoundarySample> boundary;
    bool grid_too_coarse = false;  // adjacent boundary samples differ by > 5 % in norm
};

struct RegionConfig {
    std::size_t weight_directions = 64;
    /// Evaluate the region of this single split instead of optimizing over
    /// the power grid (used to replicate fixed operating points).
    std::optional<PdfPowerSplit> fixed_split;
    /// Worker threads over the split grid. Splits are chunked by index and
    /// chunk results reduced in order, so the outcome does not depend on
    /// thread scheduling.
    std::size_t jobs = 1;
};

/// Achievable rate region of a coalition of clustered users under worst-case
/// outside jamming. Cooperating members put no power on direct streams (the
/// optimal operating point for clustered gains), leaving one
/// cooperative/common split fraction per member which is gridded; the
/// boundary is traced by maximizing each fan weight over the union of the
/// per-split polytopes. A lone user has no partner, so it transmits its
/// whole budget on the direct stream instead.
inline RateRegionSamples pdf_rate_region(const ClusteredMac& mac, Coalition s, std::size_t grid,
                                         const RegionConfig& cfg = {}) {
    detail::check_mac_coalition(mac, s, "pdf_rate_region");
    const std::vector<std::size_t> mem = members(s);
    const std::size_t dim = mem.size();
    if (dim > 3)
        throw KTooLarge("pdf_rate_region: power-split gridding capped at coalitions of 3 users");
    if (!cfg.fixed_split && grid < 2)
        throw InvariantViolation("pdf_rate_region: need at least 2 grid points per power axis");

    RateRegionSamples out;
    out.dim = dim;
    out.members = mem;

    // Assemble the splits to evaluate.
    std::vector<PdfPowerSplit> splits;
    if (cfg.fixed_split) {
        detail::check_split(mac, s, *cfg.fixed_split, "pdf_rate_region");
        splits.push_back(*cfg.fixed_split);
    } else if (dim == 1) {
        PdfPowerSplit sp = PdfPowerSplit::zero(mac.K);
        sp.p_direct[mem[0]] = mac.powers[mem[0]];
        splits.push_back(std::move(sp));
    } else {
        // Every bound grows with cooperative and common power, so members
        // spend their full budgets; only the split fraction is gridded.
        std::vector<std::size_t> idx(dim, 0);
        while (true) {
            PdfPowerSplit sp = PdfPowerSplit::zero(mac.K);
            for (std::size_t i = 0; i < dim; ++i) {
                const double alpha =
                    static_cast<double>(idx[i]) / static_cast<double>(grid - 1);
                sp.p_coop[mem[i]] = alpha * mac.powers[mem[i]];
                sp.p_common[mem[i]] = (1.0 - alpha) * mac.powers[mem[i]];
            }
            splits.push_back(std::move(sp));
            std::size_t c = 0;
            while (c < dim && ++idx[c] == grid) idx[c++] = 0;
            if (c == dim) break;
        }
    }

    const auto fan = detail::weight_fan(dim, cfg.weight_directions);
    std::vector<double> best_val(fan.size(), -std::numeric_limits<double>::infinity());
    std::vector<std::vector<double>> best_pt(fan.size(), std::vector<double>(dim, 0.0));

    const auto eval_range = [&](std::size_t lo, std::size_t hi, std::vector<double>& val_out,
                                std::vector<std::vector<double>>& pt_out) {
        for (std::size_t n = lo; n < hi; ++n) {
            const auto faces = detail::split_faces(mac, s, splits[n]);
            const auto verts = detail::face_vertices(faces, dim);
            for (const auto& v : verts) {
                for (std::size_t w = 0; w < fan.size(); ++w) {
                    double val = 0.0;
                    for (std::size_t i = 0; i < dim; ++i) val += fan[w][i] * v[i];
                    if (val > val_out[w] + 1e-15) {
                        val_out[w] = val;
                        pt_out[w] = v;
                    }
                }
            }
        }
    };

    const std::size_t jobs = std::clamp<std::size_t>(cfg.jobs, 1, std::max<std::size_t>(splits.size(), 1));
    if (jobs == 1) {
        eval_range(0, splits.size(), best_val, best_pt);
    } else {
        std::vector<std::vector<double>> chunk_val(
            jobs, std::vector<double>(fan.size(), -std::numeric_limits<double>::infinity()));
        std::vector<std::vector<std::vector<double>>> chunk_pt(
            jobs, std::vector<std::vector<double>>(fan.size(), std::vector<double>(dim, 0.0)));
        std::vector<std::exception_ptr> errors(jobs);
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (std::size_t j = 0; j < jobs; ++j) {
            const std::size_t lo = splits.size() * j / jobs;
            const std::size_t hi = splits.size() * (j + 1) / jobs;
            pool.emplace_back([&, j, lo, hi] {
                try {
                    eval_range(lo, hi, chunk_val[j], chunk_pt[j]);
                } catch (...) {
                    errors[j] = std::current_exception();
                }
            });
        }
        for (std::thread& t : pool) t.join();
        for (const std::exception_ptr& e : errors)
            if (e) std::rethrow_exception(e);
        // reduce chunks in index order with the same tie rule as the scan above
        for (std::size_t j = 0; j < jobs; ++j)
            for (std::size_t w = 0; w < fan.size(); ++w)
                if (chunk_val[j][w] > best_val[w] + 1e-15) {
                    best_val[w] = chunk_val[j][w];
                    best_pt[w] = chunk_pt[j][w];
                }
    }

    out.points.push_back(std::vector<double>(dim, 0.0));  // origin is always achievable
    for (std::size_t w = 0; w < fan.size(); ++w) {
        out.boundary.push_back({fan[w], best_pt[w]});
        bool fresh = true;
        for (const auto& p : out.points) {
            double d = 0.0;
            for (std::size_t i = 0; i < dim; ++i) d = std::max(d, std::fabs(p[i] - best_pt[w][i]));
            if (d < 1e-12) {
                fresh = false;
                break;
            }
        }
        if (fresh) out.points.push_back(best_pt[w]);
    }

    for (std::size_t w = 0; w + 1 < out.boundary.size(); ++w) {
        const auto& a = out.boundary[w].rates;
        const auto& b = out.boundary[w + 1].rates;
        double gap = 0.0, na = 0.0, nb = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            gap += (a[i] - b[i]) * (a[i] - b[i]);
            na += a[i] * a[i];
            nb += b[i] * b[i];
        }
        const double scale = std::sqrt(std::max(na, nb));
        if (scale > 1e-12 && std::sqrt(gap) > 0.05 * scale) {
            out.grid_too_coarse = true;
            break;
        }
    }
    return out;
}

/// Verdict of a sampled containment check between two rate regions.
struct RegionContainment {
    bool contained = true;
    /// First projected boundary point of the inner region that no convex
    /// combination of outer samples dominates (within 1e-6 per coordinate).
    std::vector<double> witness;
};

/// Checks that, on the selected links, every boundary sample of `inner` is
/// componentwise dominated by some point of `outer` (any convex combination
/// of outer samples is itself an achievable outer point). `dims` lists link
/// indices that must be members of both regions; all other coordinates are
/// unconstrained and ignored.
inline RegionContainment region_contains(const RateRegionSamples& outer,
                                         const RateRegionSamples& inner,
                                         const std::vector<std::size_t>& dims) {
    const auto positions = [&](const RateRegionSamples& r) {
        std::vector<std::size_t> pos;
        for (std::size_t link : dims) {
            const auto it = std::find(r.members.begin(), r.members.end(), link);
            if (it == r.members.end())
                throw InvariantViolation("region_contains: link " + std::to_string(link) +
                                         " is not a member of both regions");
            pos.push_back(static_cast<std::size_t>(it - r.members.begin()));
        }
        return pos;
    };
    const std::vector<std::size_t> pos_out = positions(outer);
    const std::vector<std::size_t> pos_in = positions(inner);
    const std::size_t d = dims.size();
    constexpr double tol = 1e-6;

    // Projected outer sample cloud (points plus boundary), deduplicated.
    std::vector<std::vector<double>> cloud;
    const auto add_outer = [&](const std::vector<double>& full) {
        std::vector<double> q(d);
        for (std::size_t i = 0; i < d; ++i) q[i] = full[pos_out[i]];
        for (const auto& c : cloud) {
            double gap = 0.0;
            for (std::size_t i = 0; i < d; ++i) gap = std::max(gap, std::fabs(c[i] - q[i]));
            if (gap < 1e-12) return;
        }
        cloud.push_back(std::move(q));
    };
    for (const auto& p : outer.points) add_outer(p);
    for (const auto& bs : outer.boundary) add_outer(bs.rates);

    const auto dominated = [&](const std::vector<double>& p) {
        for (const auto& q : cloud) {  // fast path: a single sample suffices
            bool ok = true;
            for (std::size_t i = 0; i < d; ++i)
                if (q[i] < p[i] - tol) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
        // Feasibility of sum lambda_i q_i >= p - tol, sum lambda = 1,
        // lambda >= 0, decided by a Phase-I simplex.
        const std::size_t nq = cloud.size();
        const std::size_t rows = d + 1;
        const std::size_t cols = nq + d + rows;  // lambdas, surpluses, artificials
        std::vector<std::vector<double>> a(rows, std::vector<double>(cols, 0.0));
        std::vector<double> b(rows, 0.0);
        std::vector<double> cost(cols, 0.0);
        std::vector<std::size_t> basis(rows);
        for (std::size_t j = 0; j < nq; ++j) a[0][j] = 1.0;
        b[0] = 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double rhs = p[i] - tol;
            const double sign = rhs >= 0.0 ? 1.0 : -1.0;
            for (std::size_t j = 0; j < nq; ++j) a[i + 1][j] = sign * cloud[j][i];
            a[i + 1][nq + i] = -sign;
            b[i + 1] = sign * rhs;
        }
        for (std::size_t r = 0; r < rows; ++r) {
            a[r][nq + d + r] = 1.0;
            basis[r] = nq + d + r;
            cost[nq + d + r] = 1.0;
        }
        return simplex_min(a, b, cost, std::move(basis)).objective <= 1e-9;
    };

    for (const auto& bs : inner.boundary) {
        std::vector<double> p(d);
        for (std::size_t i = 0; i < d; ++i) p[i] = bs.rates[pos_in[i]];
        if (!dominated(p)) return {false, std::move(p)};
    }
    return {true, {}};
}

/// Outcome of the no-direct-power optimality property check.
struct PowerSplitDominance {
    bool holds = true;
    std::optional<PdfPowerSplit> counterexample;  // first split beating the no-direct region
    double worst_slack = std::numeric_limits<double>::infinity();
};

/// Property check for the no-direct-power operating point: for random splits
/// that put strictly positive power on direct streams, moving that power
/// onto the cooperative streams (same totals, same common power) must not
/// shrink any weighted sum rate of the polytope. Requires clustered gains
/// and at least two members.
inline PowerSplitDominance pdf_theorem5_check(const ClusteredMac& mac, Coalition s,
                                              std::size_t trials,
                                              std::uint64_t seed = 0x1f2e3d4cULL) {
    validate(mac);  // the property is only claimed for clustered gains
    detail::check_mac_coalition(mac, s, "pdf_theorem5_check");
    const std::vector<std::size_t> mem = members(s);
    const std::size_t dim = mem.size();
    if (dim < 2)
        throw InvariantViolation("pdf_theorem5_check: needs at least 2 cooperating users");
    if (dim > 3)
        throw KTooLarge("pdf_theorem5_check: polytope tracing capped at coalitions of 3 users");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> frac(0.05, 1.0);
    std::uniform_real_distribution<double> load(0.5, 1.0);
    const auto fan = detail::weight_fan(dim, 64);

    PowerSplitDominance out;
    for (std::size_t t = 0; t < trials; ++t) {
        PdfPowerSplit sp = PdfPowerSplit::zero(mac.K);
        for (std::size_t k : mem) {
            const double fd = frac(rng), fc = frac(rng), fu = frac(rng);
            const double scale = mac.powers[k] * load(rng) / (fd + fc + fu);
            sp.p_direct[k] = fd * scale;
            sp.p_coop[k] = fc * scale;
            sp.p_common[k] = fu * scale;
        }
        PdfPowerSplit transferred = sp;
        for (std::size_t k : mem) {
            transferred.p_coop[k] += transferred.p_direct[k];
            transferred.p_direct[k] = 0.0;
        }

        const auto va = detail::face_vertices(detail::split_faces(mac, s, sp), dim);
        const auto vb = detail::face_vertices(detail::split_faces(mac, s, transferred), dim);
        for (const auto& w : fan) {
            double ma = 0.0, mb = 0.0;
            for (const auto& v : va) {
                double val = 0.0;
                for (std::size_t i = 0; i < dim; ++i) val += w[i] * v[i];
                ma = std::max(ma, val);
            }
            for (const auto& v : vb) {
                double val = 0.0;
                for (std::size_t i = 0; i < dim; ++i) val += w[i] * v[i];
                mb = std::max(mb, val);
            }
            const double slack = mb - ma;
            out.worst_slack = std::min(out.worst_slack, slack);
            if (slack < -1e-9 && out.holds) {
                out.holds = false;
                out.counterexample = sp;
            }
        }
    }
    return out;
}

/// Plot-ready CSV: a header naming the weight and rate columns by 1-based
/// link labels, then one row per boundary sample.
inline std::string region_to_csv(const RateRegionSamples& r) {
    std::ostringstream os;
    os << std::setprecision(12);
    for (std::size_t i = 0; i < r.dim; ++i) os << (i ? "," : "") << "w" << (r.members[i] + 1);
    for (std::size_t i = 0; i < r.dim; ++i) os << ",R" << (r.members[i] + 1);
    os << "\n";
    for (const auto& bs : r.boundary) {
        for (std::size_t i = 0; i < r.dim; ++i) os << (i ? "," : "") << bs.weight[i];
        for (std::size_t i = 0; i < r.dim; ++i) os << "," << bs.rates[i];
        os << "\n";
    }
    return os.str();
}

}  // namespace coopnet
