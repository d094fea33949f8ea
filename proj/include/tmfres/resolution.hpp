#pragma once

#include <map>
#include <string>
#include <vector>

#include "tmfres/module.hpp"

namespace tmfres {

// One homological stage of a minimal free resolution ... -> F_1 -> F_0 -> M.
// Differential entries are algebra elements in Milnor form; minimality
// means every entry lies in the augmentation ideal.
struct ResolutionStage {
    int s = 0;
    std::vector<int> gen_degrees;
    // diff[g] = sparse image of generator g in F_{s-1}: (generator, element).
    // For s = 0 the image lives in the module and is kept as module_image.
    std::vector<std::vector<std::pair<int, AlgebraElement>>> diff;
    std::vector<gf2::BitVec> module_image;
};

struct ProductEdge {
    int k;         // 0, 1, 2 for h0, h1, h2
    int s, t;      // source bidegree (stage s, internal degree t)
    int from, to;  // ordinals within the (s,t) and (s+1,t+2^k) generator lists
};

struct ExtChart {
    int s_max = 0, t_max = 0;
    std::map<std::pair<int, int>, int> dims;  // (s,t) -> generator count
    std::vector<ProductEdge> products;

    int dim(int s, int t) const
    {
        auto it = dims.find({s, t});
        return it == dims.end() ? 0 : it->second;
    }
};

class MinimalResolution {
public:
    // Resolves m through homological degree s_max, internal degree <= t_max.
    MinimalResolution(const CompiledModule& m, int s_max, int t_max,
                      size_t budget = 1u << 22);

    const CompiledModule& module() const { return module_; }
    int s_max() const { return s_max_; }
    int t_max() const { return t_max_; }
    const std::vector<ResolutionStage>& stages() const { return stages_; }

    ExtChart chart() const;  // dims + h0/h1/h2 product edges

private:
    CompiledModule module_;
    int s_max_, t_max_;
    std::vector<ResolutionStage> stages_;

    friend struct ResolutionChecks;
};

// Chart of Ext dimensions through the window.
ExtChart ext_dims(const CompiledModule& m, int s_max, int t_max);

enum class ChartFormat { Text, Csv, Svg };

std::string chart_emit(const ExtChart& chart, ChartFormat format);

// Dump of stage generators and differentials in Milnor notation.
std::string resolution_dump(const MinimalResolution& res);

struct TowerReport {
    bool ok = false;
    bool window_ok = true;  // stable over the probe filtrations
    std::string detail;
    std::map<int, std::pair<int, int>> towers;  // n -> (observed, expected)
};

// Identifies infinite h0-towers by stabilized column dimensions and compares
// against the monomial counts of a rank of free F2[v1^4, v2^2]-modules with
// generators in the listed stems.
TowerReport v0_tower_report(const ExtChart& chart, const std::vector<std::pair<int, int>>& gens,
                            int n_max);

}  // namespace tmfres
