#pragma once
#include "sv/rational.hpp"
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sv {

enum class ParamKind { Real, Holo, AntiHolo };

struct ParamInfo {
    ParamKind kind = ParamKind::Real;
    std::string partner; // conjugate partner; empty for real parameters
};

// A monomial rewrite x*y -> value, e.g. A*conj(A) -> 1 for a unit-modulus
// parameter, or sqrt5*sqrt5 -> 5. A single relation is a Groebner basis of
// the ideal it generates, so reduction by it yields canonical forms.
struct MonomialRewrite {
    std::string x, y;
    Rat value;
};

// Declaration context shared by every Polynomial built over it.
class ParamTable {
public:
    const std::string& declare_real(const std::string& name) {
        auto [it, fresh] = info_.try_emplace(name);
        if (!fresh && it->second.kind != ParamKind::Real)
            throw std::invalid_argument("parameter '" + name + "' already declared with a different kind");
        it->second = ParamInfo{ParamKind::Real, {}};
        return it->first;
    }

    // Declares name as holomorphic and conj(name) as its antiholomorphic partner.
    std::string declare_complex(const std::string& name) {
        std::string cname = "conj(" + name + ")";
        auto [it, fresh] = info_.try_emplace(name);
        if (!fresh && it->second.kind != ParamKind::Holo)
            throw std::invalid_argument("parameter '" + name + "' already declared with a different kind");
        it->second = ParamInfo{ParamKind::Holo, cname};
        info_[cname] = ParamInfo{ParamKind::AntiHolo, name};
        return cname;
    }

    bool has(const std::string& name) const { return info_.count(name) != 0; }
    const ParamInfo* find(const std::string& name) const {
        auto it = info_.find(name);
        return it == info_.end() ? nullptr : &it->second;
    }
    const std::string& conj_name(const std::string& name) const {
        auto it = info_.find(name);
        if (it == info_.end()) throw std::invalid_argument("unknown parameter '" + name + "'");
        return it->second.partner.empty() ? it->first : it->second.partner;
    }

    void add_unit_modulus(const std::string& name) { // name*conj(name) -> 1
        auto it = info_.find(name);
        if (it == info_.end() || it->second.kind != ParamKind::Holo)
            throw std::invalid_argument("unit modulus requires a declared complex parameter");
        rewrites_.push_back({name, it->second.partner, Rat(1)});
    }
    void add_square_value(const std::string& name, const Rat& value) { // name^2 -> value
        rewrites_.push_back({name, name, value});
    }
    void add_unit_product(const std::string& x, const std::string& y) { // x*y -> 1
        if (!has(x) || !has(y))
            throw std::invalid_argument("unit product requires declared parameters");
        rewrites_.push_back({x, y, Rat(1)});
    }
    const std::vector<MonomialRewrite>& rewrites() const { return rewrites_; }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        out.reserve(info_.size());
        for (auto& [k, v] : info_) out.push_back(k);
        return out;
    }

private:
    std::map<std::string, ParamInfo> info_;
    std::vector<MonomialRewrite> rewrites_;
};

using ParamTablePtr = std::shared_ptr<const ParamTable>;

} // namespace sv
