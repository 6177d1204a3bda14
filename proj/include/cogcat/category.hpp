#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cogcat {

/// Error thrown on precondition violations throughout the library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

struct category_data {
    std::string name;
    std::vector<std::string> labels;
    std::unordered_map<std::string_view, std::size_t> index; // keys view into labels
};

} // namespace detail

class state;

/// A finite set of named states with exactly one transformation between
/// every ordered pair. Values are immutable; copies share storage and
/// compare structurally (same name, same labels in the same order).
class category {
public:
    category(std::string name, std::vector<std::string> labels) {
        if (labels.empty())
            throw error("category '" + name + "': state list is empty");
        auto data = std::make_shared<detail::category_data>();
        data->name = std::move(name);
        data->labels = std::move(labels);
        data->index.reserve(data->labels.size());
        for (std::size_t i = 0; i < data->labels.size(); ++i) {
            const std::string& l = data->labels[i];
            if (l.empty())
                throw error("category '" + data->name + "': empty state label");
            if (!data->index.emplace(l, i).second)
                throw error("category '" + data->name + "': duplicate state label '" + l + "'");
        }
        data_ = std::move(data);
    }

    std::size_t size() const noexcept { return data_->labels.size(); }
    const std::string& name() const noexcept { return data_->name; }

    const std::string& label(std::size_t ordinal) const {
        check_ordinal(ordinal);
        return data_->labels[ordinal];
    }

    const std::vector<std::string>& labels() const noexcept { return data_->labels; }

    std::optional<std::size_t> find(std::string_view label) const noexcept {
        auto it = data_->index.find(label);
        if (it == data_->index.end()) return std::nullopt;
        return it->second;
    }

    state at(std::size_t ordinal) const;
    state operator[](std::size_t ordinal) const;
    /// State lookup by label; throws if the label is unknown.
    state at(std::string_view label) const;
    std::vector<state> states() const;

    friend bool operator==(const category& a, const category& b) noexcept {
        if (a.data_ == b.data_) return true;
        return a.data_->name == b.data_->name && a.data_->labels == b.data_->labels;
    }
    friend bool operator!=(const category& a, const category& b) noexcept { return !(a == b); }

private:
    void check_ordinal(std::size_t ordinal) const {
        if (ordinal >= data_->labels.size())
            throw error("category '" + data_->name + "': state ordinal " +
                        std::to_string(ordinal) + " out of range (size " +
                        std::to_string(data_->labels.size()) + ")");
    }

    std::shared_ptr<const detail::category_data> data_;
};

/// One state of a category: an ordinal plus a handle to its owner.
class state {
public:
    state(category owner, std::size_t ordinal) : owner_(std::move(owner)), ordinal_(ordinal) {
        if (ordinal_ >= owner_.size())
            throw error("state ordinal " + std::to_string(ordinal_) +
                        " out of range for category '" + owner_.name() + "'");
    }

    std::size_t ordinal() const noexcept { return ordinal_; }
    const std::string& label() const { return owner_.label(ordinal_); }
    const category& owner() const noexcept { return owner_; }

    friend bool operator==(const state& a, const state& b) noexcept {
        return a.ordinal_ == b.ordinal_ && a.owner_ == b.owner_;
    }
    friend bool operator!=(const state& a, const state& b) noexcept { return !(a == b); }

private:
    category owner_;
    std::size_t ordinal_;
};

inline state category::at(std::size_t ordinal) const {
    return state(*this, ordinal);
}

inline state category::operator[](std::size_t ordinal) const {
    return state(*this, ordinal);
}

inline state category::at(std::string_view label) const {
    auto ord = find(label);
    if (!ord)
        throw error("category '" + name() + "': no state labeled '" + std::string(label) + "'");
    return state(*this, *ord);
}

inline std::vector<state> category::states() const {
    std::vector<state> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.emplace_back(*this, i);
    return out;
}

class morphism;
morphism hom(const category& cat, const state& a, const state& b);

/// The unique transformation between an ordered pair of states. Fully
/// determined by (dom, cod); obtained through hom(), never stored.
class morphism {
public:
    const state& dom() const noexcept { return dom_; }
    const state& cod() const noexcept { return cod_; }
    const category& owner() const noexcept { return dom_.owner(); }
    bool is_identity() const noexcept { return dom_.ordinal() == cod_.ordinal(); }

    friend bool operator==(const morphism& a, const morphism& b) noexcept {
        return a.dom_ == b.dom_ && a.cod_ == b.cod_;
    }
    friend bool operator!=(const morphism& a, const morphism& b) noexcept { return !(a == b); }

private:
    friend morphism hom(const category& cat, const state& a, const state& b);
    morphism(state dom, state cod) : dom_(std::move(dom)), cod_(std::move(cod)) {}

    state dom_;
    state cod_;
};

/// The singleton hom-set member for (a, b).
inline morphism hom(const category& cat, const state& a, const state& b) {
    if (a.owner() != cat)
        throw error("hom: state '" + a.label() + "' does not belong to category '" + cat.name() + "'");
    if (b.owner() != cat)
        throw error("hom: state '" + b.label() + "' does not belong to category '" + cat.name() + "'");
    return morphism(a, b);
}

inline morphism identity(const category& cat, const state& a) {
    return hom(cat, a, a);
}

/// Diagrammatic composition: f applied first, then g.
/// Requires cod(f) = dom(g) within one category.
inline morphism compose(const morphism& f, const morphism& g) {
    if (f.owner() != g.owner())
        throw error("compose: morphisms belong to different categories ('" +
                    f.owner().name() + "' vs '" + g.owner().name() + "')");
    if (f.cod() != g.dom())
        throw error("compose: codomain '" + f.cod().label() + "' does not match domain '" +
                    g.dom().label() + "'");
    return hom(f.owner(), f.dom(), g.cod());
}

/// Number of morphisms: one per ordered pair of states.
inline std::uint64_t morphism_count(const category& cat) {
    const auto n = static_cast<std::uint64_t>(cat.size());
    return n * n;
}

} // namespace cogcat
