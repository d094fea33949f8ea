#include "tmfres/resolution.hpp"

#include <algorithm>
#include <sstream>

namespace tmfres {

using gf2::BitVec;
using gf2::Echelon;

namespace {

// Per-degree basis of a free module with the given generator degrees:
// pairs (generator, algebra basis element), generator-major.
struct FreeBasis {
    const Algebra* alg;
    const std::vector<int>* gen_deg;
    std::map<int, std::vector<std::pair<int, int>>> by_degree;
    std::map<int, std::map<std::pair<int, int>, int>> index;

    const std::vector<std::pair<int, int>>& basis(int t)
    {
        auto it = by_degree.find(t);
        if (it != by_degree.end())
            return it->second;
        std::vector<std::pair<int, int>> list;
        for (size_t g = 0; g < gen_deg->size(); ++g) {
            int need = t - (*gen_deg)[g];
            for (int b : alg->basis_in_degree(need))
                list.push_back({int(g), b});
        }
        auto& slot = by_degree[t];
        slot = std::move(list);
        auto& idx = index[t];
        for (size_t k = 0; k < slot.size(); ++k)
            idx.emplace(slot[k], int(k));
        return slot;
    }

    int find(int t, int g, int b)
    {
        basis(t);
        auto& idx = index[t];
        auto it = idx.find({g, b});
        return it == idx.end() ? -1 : it->second;
    }
};

}  // namespace

MinimalResolution::MinimalResolution(const CompiledModule& m, int s_max, int t_max,
                                     size_t budget)
    : module_(m), s_max_(s_max), t_max_(t_max)
{
    const Algebra& alg = m.alg();
    size_t work = 0;
    auto spend = [&](size_t units) {
        work += units;
        if (work > budget)
            throw DomainError(errc::budget_exceeded,
                              "resolution budget exceeded at " + std::to_string(work));
    };

    // references into stages_ and bases are held across the stage loop
    stages_.reserve(size_t(s_max_) + 2);

    // Stage 0: free cover of the minimal module generators.
    stages_.emplace_back();
    stages_[0].s = 0;
    {
        auto gens = minimal_generators(m);
        for (auto& [d, vs] : gens)
            for (auto& v : vs) {
                if (d > t_max)
                    continue;
                stages_[0].gen_degrees.push_back(d);
                stages_[0].diff.emplace_back();
                stages_[0].module_image.push_back(v);
            }
    }

    std::vector<FreeBasis> bases;
    bases.reserve(size_t(s_max_) + 2);
    bases.push_back(FreeBasis{&alg, &stages_[0].gen_degrees, {}, {}});

    // Kernel spaces of the previous differential, per internal degree,
    // expressed in the per-degree coordinates of F_{s-1}.
    for (int s = 1; s <= s_max_; ++s) {
        const ResolutionStage& prev = stages_[size_t(s - 1)];
        FreeBasis& fb = bases[size_t(s - 1)];

        // columns of d_{s-1} at internal degree t
        auto column_image = [&](int t, int g, int b) -> BitVec {
            if (s == 1) {
                // image in the module bucket at degree t
                auto bucket = m.by_degree().find(t);
                size_t dim = bucket == m.by_degree().end() ? 0 : bucket->second.size();
                BitVec out(dim);
                if (dim == 0)
                    return out;
                BitVec full = m.apply(b, prev.module_image[size_t(g)]);
                for (size_t k = 0; k < bucket->second.size(); ++k)
                    if (full.get(size_t(bucket->second[k])))
                        out.set(k);
                return out;
            }
            FreeBasis& target = bases[size_t(s - 2)];
            auto& tb = target.basis(t);
            BitVec out(tb.size());
            for (auto& [pg, elt] : prev.diff[size_t(g)]) {
                AlgebraElement prod = 0;
                for (AlgebraElement x = elt; x; x &= x - 1)
                    prod ^= alg.mul(b, __builtin_ctzll(x));
                for (AlgebraElement x = prod; x; x &= x - 1) {
                    int idx = target.find(t, pg, __builtin_ctzll(x));
                    if (idx >= 0)
                        out.set(size_t(idx));
                }
            }
            return out;
        };

        stages_.emplace_back();
        ResolutionStage& cur = stages_.back();
        cur.s = s;
        std::map<int, std::vector<BitVec>> kernels;  // t -> kernel basis in F_{s-1} coords

        int t_min = 0;
        if (!prev.gen_degrees.empty())
            t_min = *std::min_element(prev.gen_degrees.begin(), prev.gen_degrees.end());

        for (int t = t_min; t <= t_max_; ++t) {
            auto& fbasis = fb.basis(t);
            if (fbasis.empty())
                continue;
            spend(fbasis.size() * fbasis.size() / 64 + fbasis.size());

            std::vector<BitVec> cols;
            cols.reserve(fbasis.size());
            size_t codim = 0;
            for (auto& [g, b] : fbasis) {
                BitVec c = column_image(t, g, b);
                codim = c.width;
                cols.push_back(std::move(c));
            }
            std::vector<BitVec> ker = gf2::kernel_basis(cols, codim);

            // hits: generator actions applied to lower-degree kernels
            Echelon hit;
            for (int gb : alg.generators()) {
                int gd = alg.degree(gb);
                auto it = kernels.find(t - gd);
                if (it == kernels.end())
                    continue;
                for (const BitVec& kv : it->second) {
                    // apply Sq^{gd} to the F_{s-1} vector kv (degree t-gd -> t)
                    auto& src = fb.basis(t - gd);
                    BitVec out(fbasis.size());
                    for (size_t i : kv.bits()) {
                        auto [g, b] = src[i];
                        AlgebraElement prod = alg.mul(gb, b);
                        for (AlgebraElement x = prod; x; x &= x - 1) {
                            int idx = fb.find(t, g, __builtin_ctzll(x));
                            if (idx >= 0) {
                                if (out.get(size_t(idx)))
                                    out.clear(size_t(idx));
                                else
                                    out.set(size_t(idx));
                            }
                        }
                    }
                    hit.insert(out);
                }
            }

            // new generators: kernel classes not hit by augmentation-ideal
            // multiples, lexicographically smallest pivots first
            for (const BitVec& kv : ker) {
                BitVec res = hit.reduce(kv);
                if (res.zero())
                    continue;
                hit.insert(res);
                cur.gen_degrees.push_back(t);
                std::vector<std::pair<int, AlgebraElement>> entry;
                std::map<int, AlgebraElement> sparse;
                for (size_t i : res.bits()) {
                    auto [g, b] = fbasis[i];
                    sparse[g] ^= AlgebraElement(1) << b;
                }
                for (auto& [g, elt] : sparse)
                    if (elt) {
                        // minimality: no unit coefficients in the differential
                        if (elt & 1)
                            throw DomainError(errc::not_exterior,
                                              "minimality violated at stage " +
                                                  std::to_string(s));
                        entry.push_back({g, elt});
                    }
                cur.diff.push_back(std::move(entry));
            }
            kernels.emplace(t, std::move(ker));
        }
        bases.push_back(FreeBasis{&alg, &stages_.back().gen_degrees, {}, {}});

        // d o d = 0 spot check: the differential of every new generator is a
        // kernel element by construction; assert it maps to zero.
        if (s >= 2) {
            for (size_t g = 0; g < cur.gen_degrees.size(); ++g) {
                int t = cur.gen_degrees[g];
                FreeBasis& down = bases[size_t(s - 2)];
                auto& db = down.basis(t);
                BitVec acc(db.size());
                for (auto& [pg, elt] : cur.diff[g])
                    for (AlgebraElement x = elt; x; x &= x - 1) {
                        BitVec img = column_image(t, pg, __builtin_ctzll(x));
                        acc ^= img;
                    }
                if (!acc.zero())
                    throw DomainError(errc::not_exterior,
                                      "d o d != 0 at stage " + std::to_string(s));
            }
        }
    }
}

ExtChart MinimalResolution::chart() const
{
    ExtChart c;
    c.s_max = s_max_;
    c.t_max = t_max_;
    // ordinals within (s,t): generators in construction order
    std::vector<std::map<int, std::vector<int>>> ordinals(stages_.size());
    for (size_t s = 0; s < stages_.size(); ++s) {
        std::map<int, int> seen;
        for (size_t g = 0; g < stages_[s].gen_degrees.size(); ++g) {
            int t = stages_[s].gen_degrees[g];
            int ord = seen[t]++;
            ordinals[s][t].push_back(ord);
            c.dims[{int(s), t}] += 1;
        }
    }
    // h_k edges from the Sq^{2^k} coefficients of minimal differentials
    for (size_t s = 1; s < stages_.size(); ++s) {
        std::map<int, int> seen;
        for (size_t g = 0; g < stages_[s].gen_degrees.size(); ++g) {
            int t = stages_[s].gen_degrees[g];
            int ord = seen[t]++;
            for (auto& [pg, elt] : stages_[s].diff[g]) {
                for (int k = 0; k <= module_.alg().profile(); ++k) {
                    int b = module_.alg().sq(1 << k);
                    if (b >= 0 && ((elt >> b) & 1)) {
                        // source generator pg at stage s-1
                        int pt = stages_[s - 1].gen_degrees[size_t(pg)];
                        int pord = 0;
                        for (size_t h = 0; h < size_t(pg); ++h)
                            if (stages_[s - 1].gen_degrees[h] == pt)
                                ++pord;
                        c.products.push_back({k, int(s - 1), pt, pord, ord});
                    }
                }
            }
        }
    }
    std::sort(c.products.begin(), c.products.end(), [](const ProductEdge& a, const ProductEdge& b) {
        return std::tie(a.k, a.s, a.t, a.from, a.to) < std::tie(b.k, b.s, b.t, b.from, b.to);
    });
    return c;
}

ExtChart ext_dims(const CompiledModule& m, int s_max, int t_max)
{
    return MinimalResolution(m, s_max, t_max).chart();
}

std::string chart_emit(const ExtChart& chart, ChartFormat format)
{
    std::ostringstream os;
    if (format == ChartFormat::Csv) {
        os << "s,t,dim\n";
        for (auto& [st, d] : chart.dims)
            os << st.first << ',' << st.second << ',' << d << '\n';
        return os.str();
    }
    if (format == ChartFormat::Text) {
        // (t - s, s) grid, s rows descending
        int n_max = chart.t_max - 0;
        for (int s = chart.s_max; s >= 0; --s) {
            os << (s < 10 ? " " : "") << s << " |";
            for (int n = 0; n <= std::min(n_max, chart.t_max - s); ++n) {
                int d = chart.dim(s, n + s);
                if (d == 0)
                    os << " .";
                else if (d < 10)
                    os << ' ' << d;
                else
                    os << " *";
            }
            os << '\n';
        }
        os << "    ";
        for (int n = 0; n <= n_max; ++n)
            os << (n % 5 == 0 ? "--" : "--");
        os << "\n     ";
        for (int n = 0; n <= n_max; n += 5)
            os << n << std::string(size_t(10 - std::to_string(n).size()), ' ');
        os << '\n';
        return os.str();
    }
    // SVG: dots per class, segments for h0/h1/h2
    const int cell = 16, r = 3, pad = 24;
    int n_max = chart.t_max;
    int width = pad * 2 + cell * (n_max + 1), height = pad * 2 + cell * (chart.s_max + 1);
    auto xc = [&](int n, int ord, int dim) {
        return pad + n * cell + cell / 2 + (ord * 2 - (dim - 1)) * 2;
    };
    auto yc = [&](int s) { return height - pad - s * cell - cell / 2; };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    static const char* colors[3] = {"#444444", "#1f77b4", "#d62728"};
    for (auto& e : chart.products) {
        int n1 = e.t - e.s, n2 = (e.t + (1 << e.k)) - (e.s + 1);
        if (n1 < 0 || n2 < 0)
            continue;
        os << "<line x1=\"" << xc(n1, e.from, chart.dim(e.s, e.t)) << "\" y1=\"" << yc(e.s)
           << "\" x2=\"" << xc(n2, e.to, chart.dim(e.s + 1, e.t + (1 << e.k))) << "\" y2=\""
           << yc(e.s + 1) << "\" stroke=\"" << colors[e.k] << "\" stroke-width=\"1\"/>\n";
    }
    for (auto& [st, d] : chart.dims) {
        int n = st.second - st.first;
        if (n < 0)
            continue;
        for (int ord = 0; ord < d; ++ord)
            os << "<circle cx=\"" << xc(n, ord, d) << "\" cy=\"" << yc(st.first)
               << "\" r=\"" << r << "\" fill=\"black\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string resolution_dump(const MinimalResolution& res)
{
    std::ostringstream os;
    const Algebra& alg = res.module().alg();
    for (auto& st : res.stages()) {
        os << "stage " << st.s << ": " << st.gen_degrees.size() << " generators\n";
        for (size_t g = 0; g < st.gen_degrees.size(); ++g) {
            os << "  g" << st.s << '_' << g << " (t=" << st.gen_degrees[g] << ")";
            if (st.s > 0) {
                os << " -> ";
                bool first = true;
                for (auto& [pg, elt] : st.diff[g]) {
                    if (!first)
                        os << " + ";
                    first = false;
                    os << '(' << alg.format(elt) << ") g" << (st.s - 1) << '_' << pg;
                }
            }
            os << '\n';
        }
    }
    return os.str();
}

TowerReport v0_tower_report(const ExtChart& chart, const std::vector<std::pair<int, int>>& gens,
                            int n_max)
{
    TowerReport rep;
    std::ostringstream detail;
    rep.ok = true;
    // stability probe over the top three filtrations of the chart
    for (int n = 0; n <= n_max; ++n) {
        int s_probe = chart.s_max;
        if (n + s_probe > chart.t_max) {
            rep.window_ok = false;
            rep.ok = false;
            detail << "window too small to probe n=" << n << "\n";
            continue;
        }
        int d0 = chart.dim(s_probe, n + s_probe);
        for (int back = 1; back <= 2; ++back) {
            if (chart.dim(s_probe - back, n + s_probe - back) != d0) {
                rep.window_ok = false;
                detail << "column n=" << n << " not stabilized\n";
            }
        }
        int expected = 0;
        for (auto& [n0, mult] : gens) {
            // monomials v1^{4a} v2^{2b}: stems 8a + 12b
            for (int a = 0; n0 + 8 * a <= n; ++a)
                for (int b = 0; n0 + 8 * a + 12 * b <= n; ++b)
                    if (n0 + 8 * a + 12 * b == n)
                        expected += mult;
        }
        rep.towers[n] = {d0, expected};
        if (d0 != expected) {
            rep.ok = false;
            detail << "n=" << n << ": observed " << d0 << " towers, expected " << expected
                   << "\n";
        }
    }
    if (!rep.window_ok)
        throw DomainError(errc::window_too_small, "tower columns not stabilized: " +
                                                      detail.str());
    rep.detail = detail.str();
    return rep;
}

}  // namespace tmfres
