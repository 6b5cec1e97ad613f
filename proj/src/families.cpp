#include "choicewalk/families.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <random>
#include <set>

#include "choicewalk/errors.hpp"

namespace choicewalk {

// ---------------------------------------------------------------------------
// FamilySpec text form

FamilySpec FamilySpec::parse(std::string_view text) {
    FamilySpec spec;
    const auto colon = text.find(':');
    spec.kind = std::string(text.substr(0, colon));
    if (spec.kind.empty()) throw UsageError("family spec '" + std::string(text) + "': missing kind");
    if (colon == std::string_view::npos) return spec;

    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = rest.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size())
            throw UsageError("family spec '" + std::string(text) + "': expected key=value, got '" + std::string(item) +
                             "'");
        std::string key(item.substr(0, eq));
        if (spec.has(key)) throw UsageError("family spec '" + std::string(text) + "': repeated key '" + key + "'");
        spec.params.emplace_back(std::move(key), std::string(item.substr(eq + 1)));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
        if (rest.empty()) throw UsageError("family spec '" + std::string(text) + "': trailing comma");
    }
    return spec;
}

std::string FamilySpec::to_string() const {
    std::string out = kind;
    for (std::size_t i = 0; i < params.size(); ++i) {
        out += i == 0 ? ':' : ',';
        out += params[i].first;
        out += '=';
        out += params[i].second;
    }
    return out;
}

const std::string* FamilySpec::find(std::string_view key) const {
    for (const auto& [k, v] : params)
        if (k == key) return &v;
    return nullptr;
}

bool FamilySpec::has(std::string_view key) const { return find(key) != nullptr; }

FamilySpec FamilySpec::with(std::string_view key, std::string value) const {
    FamilySpec out = *this;
    for (auto& [k, v] : out.params)
        if (k == key) {
            v = std::move(value);
            return out;
        }
    out.params.emplace_back(std::string(key), std::move(value));
    return out;
}

namespace {

// ---------------------------------------------------------------------------
// Threshold on a coordinate set: dictator, and, or, majority, prefix_threshold

class ThresholdFunction final : public MonotoneFunction {
public:
    ThresholdFunction(std::size_t n, std::vector<std::size_t> set, std::size_t k, std::string name)
        : MonotoneFunction(n, std::move(name)), set_(std::move(set)), member_(n, 0), k_(k) {
        for (auto i : set_) member_[i] = 1;
    }

    bool evaluate(BitView x) const override {
        std::size_t c = 0;
        for (auto i : set_) c += x.test(i);
        return c >= k_;
    }

    std::unique_ptr<IncrementalTracker> fresh_tracker() const override {
        return std::make_unique<Tracker>(*this);
    }

    std::optional<std::vector<std::size_t>> known_relevant() const override {
        if (k_ == 0 || k_ > set_.size()) return std::vector<std::size_t>{};
        return set_;
    }

private:
    class Tracker final : public IncrementalTracker {
    public:
        explicit Tracker(const ThresholdFunction& f) : IncrementalTracker(f.arity()), f_(f) { initialize(); }

        std::optional<bool> is_useful(std::size_t i) const override {
            return !active() && f_.member_[i] && !state().test(i);
        }

    private:
        bool on_activate(std::size_t i) override {
            count_ += f_.member_[i];
            return count_ >= f_.k_;
        }
        bool on_reset() override {
            count_ = 0;
            return f_.k_ == 0;
        }

        const ThresholdFunction& f_;
        std::size_t count_ = 0;
    };

    std::vector<std::size_t> set_;
    std::vector<std::uint8_t> member_;
    std::size_t k_;
};

// ---------------------------------------------------------------------------
// Tabulated function of the first m coordinates (juntas)

class TableFunction final : public MonotoneFunction {
public:
    // table[mask] for mask over coordinates 0..m-1; must be monotone.
    TableFunction(std::size_t n, std::size_t m, std::vector<std::uint8_t> table, std::string name)
        : MonotoneFunction(n, std::move(name)), m_(m), table_(std::move(table)), useful_(table_.size(), 0) {
        // pivots(y) = {i not in y : f(y)=0, f(y+i)=1}; useful(mask) is the
        // union of pivots over all supersets of mask.
        for (std::uint32_t y = 0; y < table_.size(); ++y) {
            if (table_[y]) continue;
            for (std::size_t i = 0; i < m_; ++i)
                if (!((y >> i) & 1u) && table_[y | (1u << i)]) useful_[y] |= 1u << i;
        }
        for (std::size_t i = 0; i < m_; ++i)
            for (std::uint32_t y = 0; y < table_.size(); ++y)
                if (!((y >> i) & 1u)) useful_[y] |= useful_[y | (1u << i)];
    }

    bool evaluate(BitView x) const override { return table_[local_mask(x)]; }

    std::unique_ptr<IncrementalTracker> fresh_tracker() const override {
        return std::make_unique<Tracker>(*this);
    }

    std::optional<std::vector<std::size_t>> known_relevant() const override {
        // Every input is a superset of the empty mask, so useful_[0] is R(f).
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < m_; ++i)
            if ((useful_[0] >> i) & 1u) out.push_back(i);
        return out;
    }

private:
    std::uint32_t local_mask(BitView x) const {
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < m_; ++i)
            if (x.test(i)) mask |= 1u << i;
        return mask;
    }

    class Tracker final : public IncrementalTracker {
    public:
        explicit Tracker(const TableFunction& f) : IncrementalTracker(f.arity()), f_(f) { initialize(); }

        std::optional<bool> is_useful(std::size_t i) const override {
            if (active() || i >= f_.m_ || state().test(i)) return false;
            return ((f_.useful_[mask_] >> i) & 1u) != 0;
        }

    private:
        bool on_activate(std::size_t i) override {
            if (i < f_.m_) mask_ |= 1u << i;
            return f_.table_[mask_];
        }
        bool on_reset() override {
            mask_ = 0;
            return f_.table_[0];
        }

        const TableFunction& f_;
        std::uint32_t mask_ = 0;
    };

    std::size_t m_;
    std::vector<std::uint8_t> table_;
    std::vector<std::uint32_t> useful_;
};

// ---------------------------------------------------------------------------
// Monotone DNF (OR of ANDs)

class DnfFunction final : public MonotoneFunction {
public:
    DnfFunction(std::size_t n, std::vector<std::vector<std::size_t>> clauses, std::string name)
        : MonotoneFunction(n, std::move(name)), clauses_(std::move(clauses)), occurs_(n) {
        for (std::size_t c = 0; c < clauses_.size(); ++c)
            for (auto i : clauses_[c]) occurs_[i].push_back(static_cast<std::uint32_t>(c));
    }

    const std::vector<std::vector<std::size_t>>& clauses() const noexcept { return clauses_; }

    bool evaluate(BitView x) const override {
        return std::any_of(clauses_.begin(), clauses_.end(), [&](const auto& clause) {
            return std::all_of(clause.begin(), clause.end(), [&](std::size_t i) { return x.test(i); });
        });
    }

    std::unique_ptr<IncrementalTracker> fresh_tracker() const override {
        return std::make_unique<Tracker>(*this);
    }

private:
    class Tracker final : public IncrementalTracker {
    public:
        explicit Tracker(const DnfFunction& f)
            : IncrementalTracker(f.arity()), f_(f), missing_(f.clauses_.size()) {
            initialize();
        }

        // Superset: any zero that occurs in some clause.
        std::optional<bool> is_useful(std::size_t i) const override {
            return !active() && !state().test(i) && !f_.occurs_[i].empty();
        }

    private:
        bool on_activate(std::size_t i) override {
            bool hit = false;
            for (auto c : f_.occurs_[i]) hit |= (--missing_[c] == 0);
            return hit;
        }
        bool on_reset() override {
            bool empty_clause = false;
            for (std::size_t c = 0; c < missing_.size(); ++c) {
                missing_[c] = static_cast<std::uint32_t>(f_.clauses_[c].size());
                empty_clause |= missing_[c] == 0;
            }
            return empty_clause;
        }

        const DnfFunction& f_;
        std::vector<std::uint32_t> missing_;
    };

    std::vector<std::vector<std::size_t>> clauses_;
    std::vector<std::vector<std::uint32_t>> occurs_;
};

// ---------------------------------------------------------------------------
// Tribes

class TribesFunction final : public MonotoneFunction {
public:
    TribesFunction(std::size_t n, std::size_t s, std::string name)
        : MonotoneFunction(n, std::move(name)), tribes_(tribe_partition(n, s)), tribe_of_(n) {
        for (std::size_t t = 0; t < tribes_.size(); ++t)
            for (auto i : tribes_[t]) tribe_of_[i] = static_cast<std::uint32_t>(t);
    }

    bool evaluate(BitView x) const override {
        return std::any_of(tribes_.begin(), tribes_.end(), [&](const auto& tribe) {
            return std::all_of(tribe.begin(), tribe.end(), [&](std::size_t i) { return x.test(i); });
        });
    }

    std::unique_ptr<IncrementalTracker> fresh_tracker() const override {
        return std::make_unique<Tracker>(*this);
    }

    std::optional<std::vector<std::size_t>> known_relevant() const override {
        std::vector<std::size_t> all(arity());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return all;
    }

private:
    class Tracker final : public IncrementalTracker {
    public:
        explicit Tracker(const TribesFunction& f) : IncrementalTracker(f.arity()), f_(f), filled_(f.tribes_.size()) {
            initialize();
        }

        // While no tribe is complete every zero sits in an incomplete tribe.
        std::optional<bool> is_useful(std::size_t i) const override { return !active() && !state().test(i); }

    private:
        bool on_activate(std::size_t i) override {
            const auto t = f_.tribe_of_[i];
            return ++filled_[t] == f_.tribes_[t].size();
        }
        bool on_reset() override {
            std::fill(filled_.begin(), filled_.end(), 0);
            return false;
        }

        const TribesFunction& f_;
        std::vector<std::uint32_t> filled_;
    };

    std::vector<std::vector<std::size_t>> tribes_;
    std::vector<std::uint32_t> tribe_of_;
};

// ---------------------------------------------------------------------------
// Recursive majority over contiguous blocks: a level-j node covers k^j leaves

class RecursiveMajorityFunction final : public MonotoneFunction {
public:
    RecursiveMajorityFunction(std::size_t k, std::size_t t, std::size_t leaves, std::string name)
        : MonotoneFunction(leaves, std::move(name)), k_(k), t_(t), quorum_((k + 1) / 2) {
        std::size_t width = leaves;
        for (std::size_t j = 1; j <= t_; ++j) {
            width /= k_;
            level_offset_.push_back(node_count_);
            node_count_ += width;
        }
    }

    bool evaluate(BitView x) const override {
        std::vector<std::uint8_t> level(arity());
        for (std::size_t i = 0; i < arity(); ++i) level[i] = x.test(i);
        while (level.size() > 1) {
            std::vector<std::uint8_t> up(level.size() / k_);
            for (std::size_t p = 0; p < up.size(); ++p) {
                std::size_t c = 0;
                for (std::size_t q = 0; q < k_; ++q) c += level[p * k_ + q];
                up[p] = c >= quorum_;
            }
            level = std::move(up);
        }
        return level[0] != 0;
    }

    std::unique_ptr<IncrementalTracker> fresh_tracker() const override {
        return std::make_unique<Tracker>(*this);
    }

    std::optional<std::vector<std::size_t>> known_relevant() const override {
        std::vector<std::size_t> all(arity());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return all;
    }

private:
    class Tracker final : public IncrementalTracker {
    public:
        explicit Tracker(const RecursiveMajorityFunction& f)
            : IncrementalTracker(f.arity()), f_(f), count_(f.node_count_) {
            initialize();
        }

        // A zero leaf matters iff no node on its path to the root is already
        // activated: each unactivated ancestor can be made to hinge on it.
        std::optional<bool> is_useful(std::size_t i) const override {
            if (active() || state().test(i)) return false;
            std::size_t node = i;
            for (std::size_t j = 0; j < f_.t_; ++j) {
                node /= f_.k_;
                if (count_[f_.level_offset_[j] + node] >= f_.quorum_) return false;
            }
            return true;
        }

    private:
        bool on_activate(std::size_t i) override {
            std::size_t node = i;
            for (std::size_t j = 0; j < f_.t_; ++j) {
                node /= f_.k_;
                if (++count_[f_.level_offset_[j] + node] != f_.quorum_) return false;
            }
            return true;
        }
        bool on_reset() override {
            std::fill(count_.begin(), count_.end(), 0);
            return false;
        }

        const RecursiveMajorityFunction& f_;
        std::vector<std::uint32_t> count_;  // activated children per internal node
    };

    std::size_t k_;
    std::size_t t_;
    std::size_t quorum_;
    std::vector<std::size_t> level_offset_;  // level j+1 nodes start here
    std::size_t node_count_ = 0;
};

// ---------------------------------------------------------------------------
// Graph properties

class ConnectivityFunction final : public GraphFunction {
public:
    ConnectivityFunction(std::size_t v, std::string name) : GraphFunction(v, std::move(name)) {}

    bool evaluate(BitView x) const override {
        UnionFindState uf(vertices());
        for (std::size_t i = 0; i < arity(); ++i)
            if (x.test(i)) {
                const auto [a, b] = edges().endpoints(i);
                uf.unite(a, b);
            }
        return uf.components() == 1;
    }

    std::unique_ptr<IncrementalTracker> fresh_tracker() const override {
        return std::make_unique<Tracker>(*this);
    }

    std::optional<std::vector<std::size_t>> known_relevant() const override {
        std::vector<std::size_t> all(arity());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return all;
    }

private:
    class Tracker final : public GraphTracker {
    public:
        explicit Tracker(const ConnectivityFunction& f) : GraphTracker(f) { initialize(); }

        // Exactly the edges joining two distinct components.
        std::optional<bool> is_useful(std::size_t i) const override {
            if (active() || state().test(i)) return false;
            const auto [a, b] = graph().edges().endpoints(i);
            return uf_.find(a) != uf_.find(b);
        }

    private:
        bool edge_added(std::size_t, std::size_t) override { return uf_.components() == 1; }
        bool graph_reset() override { return uf_.components() == 1; }
    };
};

// Bitset adjacency, v <= 64.
bool k_connected(const std::vector<std::uint64_t>& adj, std::size_t v, std::size_t k) {
    if (v <= k) return false;
    const std::uint64_t all = v == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << v) - 1;
    auto connected_without = [&](std::uint64_t removed) {
        const std::uint64_t alive = all & ~removed;
        if (alive == 0) return true;
        std::uint64_t seen = alive & (~alive + 1);
        std::uint64_t frontier = seen;
        while (frontier) {
            const int u = std::countr_zero(frontier);
            frontier &= frontier - 1;
            const std::uint64_t next = adj[static_cast<std::size_t>(u)] & alive & ~seen;
            seen |= next;
            frontier |= next;
        }
        return seen == alive;
    };
    for (std::size_t u = 0; u < v; ++u)
        if (static_cast<std::size_t>(std::popcount(adj[u])) < k) return false;
    if (!connected_without(0)) return false;
    if (k >= 2)
        for (std::size_t a = 0; a < v; ++a) {
            const std::uint64_t ra = std::uint64_t{1} << a;
            if (!connected_without(ra)) return false;
            if (k >= 3)
                for (std::size_t b = a + 1; b < v; ++b)
                    if (!connected_without(ra | (std::uint64_t{1} << b))) return false;
        }
    return true;
}

class KConnectivityFunction final : public GraphFunction {
public:
    KConnectivityFunction(std::size_t v, std::size_t k, std::string name) : GraphFunction(v, std::move(name)), k_(k) {}

    bool evaluate(BitView x) const override {
        std::vector<std::uint64_t> adj(vertices(), 0);
        for (std::size_t i = 0; i < arity(); ++i)
            if (x.test(i)) {
                const auto [a, b] = edges().endpoints(i);
                adj[a] |= std::uint64_t{1} << b;
                adj[b] |= std::uint64_t{1} << a;
            }
        return k_connected(adj, vertices(), k_);
    }

    std::unique_ptr<IncrementalTracker> fresh_tracker() const override {
        return std::make_unique<Tracker>(*this);
    }

    std::optional<std::vector<std::size_t>> known_relevant() const override {
        std::vector<std::size_t> all(arity());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return all;
    }

private:
    class Tracker final : public GraphTracker {
    public:
        explicit Tracker(const KConnectivityFunction& f) : GraphTracker(f), f_(f), adj_(f.vertices(), 0) {
            initialize();
        }

    private:
        bool edge_added(std::size_t a, std::size_t b) override {
            adj_[a] |= std::uint64_t{1} << b;
            adj_[b] |= std::uint64_t{1} << a;
            // Cheap necessary conditions before the definitional check.
            if (min_degree() < f_.k_ || uf_.components() != 1) return false;
            return k_connected(adj_, f_.vertices(), f_.k_);
        }
        bool graph_reset() override {
            std::fill(adj_.begin(), adj_.end(), 0);
            return k_connected(adj_, f_.vertices(), f_.k_);
        }

        const KConnectivityFunction& f_;
        std::vector<std::uint64_t> adj_;
    };

    std::size_t k_;
};

class ConstantFunction final : public MonotoneFunction {
public:
    ConstantFunction(std::size_t n, bool value)
        : MonotoneFunction(n, std::string("constant:n=") + std::to_string(n) + ",value=" + (value ? "1" : "0")),
          value_(value) {}

    bool evaluate(BitView) const override { return value_; }
    std::optional<std::vector<std::size_t>> known_relevant() const override { return std::vector<std::size_t>{}; }

private:
    bool value_;
};

// ---------------------------------------------------------------------------
// Spec parameter access

class Params {
public:
    explicit Params(const FamilySpec& spec) : spec_(spec) {}

    std::size_t size(std::string_view key) {
        const auto* v = lookup(key);
        if (!v) throw UsageError("family '" + spec_.kind + "': missing parameter '" + std::string(key) + "'");
        return parse_size(key, *v);
    }
    std::size_t size_or(std::string_view key, std::size_t fallback) {
        const auto* v = lookup(key);
        return v ? parse_size(key, *v) : fallback;
    }
    std::optional<double> real(std::string_view key) {
        const auto* v = lookup(key);
        if (!v) return std::nullopt;
        try {
            std::size_t used = 0;
            const double d = std::stod(*v, &used);
            if (used != v->size()) throw std::invalid_argument("");
            return d;
        } catch (const std::exception&) {
            throw UsageError("family '" + spec_.kind + "': parameter '" + std::string(key) + "' is not a number: '" +
                             *v + "'");
        }
    }
    bool present(std::string_view key) const { return spec_.has(key); }

    // Rejects keys that were never read.
    void finish() const {
        for (const auto& [k, v] : spec_.params)
            if (!used_.count(k))
                throw UsageError("family '" + spec_.kind + "': unknown parameter '" + k + "'");
    }

private:
    const std::string* lookup(std::string_view key) {
        used_.insert(std::string(key));
        return spec_.find(key);
    }
    std::size_t parse_size(std::string_view key, const std::string& v) const {
        std::size_t out = 0;
        const auto* end = v.data() + v.size();
        const auto [ptr, ec] = std::from_chars(v.data(), end, out);
        if (ec != std::errc() || ptr != end)
            throw UsageError("family '" + spec_.kind + "': parameter '" + std::string(key) +
                             "' must be a non-negative integer, got '" + v + "'");
        return out;
    }

    const FamilySpec& spec_;
    std::set<std::string, std::less<>> used_;
};

std::string canonical(std::string kind, std::initializer_list<std::pair<const char*, std::string>> kv) {
    FamilySpec s{std::move(kind), {}};
    for (const auto& [k, v] : kv) s.params.emplace_back(k, v);
    return s.to_string();
}

std::vector<std::size_t> iota_vec(std::size_t from, std::size_t to) {
    std::vector<std::size_t> out;
    for (std::size_t i = from; i < to; ++i) out.push_back(i);
    return out;
}

void require_positive(std::size_t n, const char* what) {
    if (n == 0) throw UsageError(std::string(what) + ": n must be at least 1");
}

// w distinct values from [0, n) by Floyd's algorithm, ascending.
std::vector<std::size_t> random_subset(std::size_t n, std::size_t w, std::mt19937_64& rng) {
    std::set<std::size_t> chosen;
    for (std::size_t j = n - w; j < n; ++j) {
        const std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    return {chosen.begin(), chosen.end()};
}

} // namespace

// ---------------------------------------------------------------------------
// Graph base

GraphFunction::GraphFunction(std::size_t vertices, std::string name)
    : MonotoneFunction(vertices * (vertices - (vertices > 0)) / 2, std::move(name)), edges_(vertices) {}

GraphTracker::GraphTracker(const GraphFunction& g)
    : IncrementalTracker(g.arity()),
      uf_(g.vertices()),
      graph_(g),
      degree_(g.vertices(), 0),
      degree_count_(g.vertices() + 1, 0) {}

bool GraphTracker::on_activate(std::size_t edge) {
    const auto [a, b] = graph_.edges().endpoints(edge);
    for (auto x : {a, b}) {
        --degree_count_[degree_[x]];
        ++degree_[x];
        ++degree_count_[degree_[x]];
    }
    while (min_degree_ < degree_count_.size() && degree_count_[min_degree_] == 0) ++min_degree_;
    uf_.unite(a, b);
    return edge_added(a, b);
}

bool GraphTracker::on_reset() {
    uf_.reset();
    std::fill(degree_.begin(), degree_.end(), 0);
    std::fill(degree_count_.begin(), degree_count_.end(), 0);
    degree_count_[0] = static_cast<std::uint32_t>(graph_.vertices());
    min_degree_ = 0;
    return graph_reset();
}

// ---------------------------------------------------------------------------
// Constructors

FunctionHandle make_threshold_on(std::size_t n, std::vector<std::size_t> set, std::size_t k, std::string name) {
    std::sort(set.begin(), set.end());
    if (std::adjacent_find(set.begin(), set.end()) != set.end()) throw UsageError(name + ": duplicate coordinate");
    if (!set.empty() && set.back() >= n) throw UsageError(name + ": coordinate out of range");
    if (k > set.size()) throw UsageError(name + ": threshold exceeds the coordinate set");
    return std::make_shared<ThresholdFunction>(n, std::move(set), k, std::move(name));
}

FunctionHandle make_dictator(std::size_t n, std::size_t i) {
    if (i >= n) throw UsageError("dictator: i=" + std::to_string(i) + " must be < n=" + std::to_string(n));
    return make_threshold_on(n, {i}, 1, canonical("dictator", {{"n", std::to_string(n)}, {"i", std::to_string(i)}}));
}

FunctionHandle make_and(std::size_t n) {
    require_positive(n, "and");
    return make_threshold_on(n, iota_vec(0, n), n, canonical("and", {{"n", std::to_string(n)}}));
}

FunctionHandle make_or(std::size_t n) {
    require_positive(n, "or");
    return make_threshold_on(n, iota_vec(0, n), 1, canonical("or", {{"n", std::to_string(n)}}));
}

FunctionHandle make_majority(std::size_t n) {
    require_positive(n, "majority");
    return make_threshold_on(n, iota_vec(0, n), n / 2 + 1, canonical("majority", {{"n", std::to_string(n)}}));
}

FunctionHandle make_prefix_threshold(std::size_t n, std::size_t m, std::size_t k) {
    if (m > n) throw UsageError("prefix_threshold: m=" + std::to_string(m) + " exceeds n=" + std::to_string(n));
    if (k == 0) throw UsageError("prefix_threshold: k must be at least 1");
    if (k > m) throw UsageError("prefix_threshold: k=" + std::to_string(k) + " exceeds m=" + std::to_string(m));
    return make_threshold_on(
        n, iota_vec(0, m), k,
        canonical("prefix_threshold", {{"n", std::to_string(n)}, {"m", std::to_string(m)}, {"k", std::to_string(k)}}));
}

FunctionHandle make_junta(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m == 0 || m > 16) throw UsageError("junta: m must be in [1, 16]");
    if (m > n) throw UsageError("junta: m exceeds n");
    std::mt19937_64 rng(seed);
    const std::size_t lo = std::min<std::size_t>(2, m);
    const std::size_t hi = std::max(lo, (m + 1) / 2);
    std::vector<std::uint32_t> minterms;
    for (std::size_t c = 0; c < m; ++c) {
        const std::size_t w = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
        std::uint32_t mask = 0;
        for (auto i : random_subset(m, w, rng)) mask |= 1u << i;
        minterms.push_back(mask);
    }
    std::vector<std::uint8_t> table(std::size_t{1} << m, 0);
    for (std::uint32_t x = 0; x < table.size(); ++x)
        table[x] = std::any_of(minterms.begin(), minterms.end(), [x](std::uint32_t t) { return (x & t) == t; });
    return std::make_shared<TableFunction>(
        n, m, std::move(table),
        canonical("junta", {{"n", std::to_string(n)}, {"m", std::to_string(m)}, {"seed", std::to_string(seed)}}));
}

std::vector<std::vector<std::size_t>> tribe_partition(std::size_t n, std::size_t s) {
    if (s == 0) throw UsageError("tribes: s must be at least 1");
    if (s > n) throw UsageError("tribes: tribe size s=" + std::to_string(s) + " exceeds n=" + std::to_string(n));
    const std::size_t t = n / s;
    const std::size_t rem = n % s;
    if (rem > t)
        throw UsageError("tribes: n=" + std::to_string(n) + " cannot be split into blocks of size " +
                         std::to_string(s) + " or " + std::to_string(s + 1));
    std::vector<std::vector<std::size_t>> out(t);
    std::size_t next = 0;
    for (std::size_t b = 0; b < t; ++b) {
        const std::size_t size = s + (b < rem ? 1 : 0);
        for (std::size_t q = 0; q < size; ++q) out[b].push_back(next++);
    }
    return out;
}

FunctionHandle make_tribes(std::size_t n, std::size_t s) {
    tribe_partition(n, s);
    return std::make_shared<TribesFunction>(n, s, canonical("tribes", {{"n", std::to_string(n)}, {"s", std::to_string(s)}}));
}

FunctionHandle make_recursive_majority(std::size_t k, std::size_t t) {
    if (k < 3 || k % 2 == 0) throw UsageError("recursive_majority: k must be odd and at least 3");
    if (t == 0) throw UsageError("recursive_majority: t must be at least 1");
    std::size_t leaves = 1;
    for (std::size_t j = 0; j < t; ++j) {
        if (leaves > (std::size_t{1} << 28) / k) throw UsageError("recursive_majority: k^t exceeds 2^28 leaves");
        leaves *= k;
    }
    return std::make_shared<RecursiveMajorityFunction>(
        k, t, leaves, canonical("recursive_majority", {{"k", std::to_string(k)}, {"t", std::to_string(t)}}));
}

FunctionHandle make_connectivity(std::size_t vertices) {
    if (vertices < 2) throw UsageError("connectivity: v must be at least 2");
    return std::make_shared<ConnectivityFunction>(vertices, canonical("connectivity", {{"v", std::to_string(vertices)}}));
}

FunctionHandle make_k_connectivity(std::size_t vertices, std::size_t k) {
    if (k == 0 || k > 3) throw UsageError("k_connectivity: k must be in [1, 3]");
    if (vertices > 64) throw UsageError("k_connectivity: v must be at most 64");
    if (vertices < k + 1) throw UsageError("k_connectivity: v must exceed k");
    return std::make_shared<KConnectivityFunction>(
        vertices, k, canonical("k_connectivity", {{"v", std::to_string(vertices)}, {"k", std::to_string(k)}}));
}

FunctionHandle make_dnf(std::size_t n, std::vector<std::vector<std::size_t>> clauses, std::string name) {
    for (auto& c : clauses) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        if (!c.empty() && c.back() >= n) throw UsageError(name + ": clause coordinate out of range");
    }
    return std::make_shared<DnfFunction>(n, std::move(clauses), std::move(name));
}

FunctionHandle make_random_monotone_dnf(std::size_t n, std::size_t clauses, std::size_t width, std::uint64_t seed) {
    if (clauses == 0) throw UsageError("random_monotone_dnf: c must be at least 1");
    if (width == 0 || width > n) throw UsageError("random_monotone_dnf: w must be in [1, n]");
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::size_t>> cs;
    for (std::size_t c = 0; c < clauses; ++c) cs.push_back(random_subset(n, width, rng));
    return make_dnf(n, std::move(cs),
                    canonical("random_monotone_dnf", {{"n", std::to_string(n)},
                                                      {"c", std::to_string(clauses)},
                                                      {"w", std::to_string(width)},
                                                      {"seed", std::to_string(seed)}}));
}

FunctionHandle make_constant(std::size_t n, bool value) { return std::make_shared<ConstantFunction>(n, value); }

// ---------------------------------------------------------------------------
// Catalog and dispatch

const std::vector<FamilyInfo>& family_catalog() {
    static const std::vector<FamilyInfo> catalog = {
        {"dictator", "n, i", "f(x) = x_i"},
        {"junta", "n, m (<=16), seed", "random monotone function of coordinates 0..m-1"},
        {"prefix_threshold", "n, m, k | n, eps",
         "at least k ones among coordinates 0..m-1; with eps: m=floor(eps*n), k=floor(ln n)"},
        {"tribes", "n, s", "OR of ANDs over consecutive blocks of size s or s+1"},
        {"recursive_majority", "k (odd >= 3), t", "depth-t tree of k-wise majorities over k^t bits"},
        {"and", "n", "all n bits set"},
        {"or", "n", "some bit set"},
        {"majority", "n", "more than n/2 bits set"},
        {"connectivity", "v", "graph on v vertices (one bit per vertex pair) is connected"},
        {"k_connectivity", "v (<=64), k (1..3)", "graph on v vertices is k-vertex-connected"},
        {"random_monotone_dnf", "n, c, w, seed", "OR of c random AND-clauses of width w"},
    };
    return catalog;
}

std::string size_key(std::string_view kind) {
    if (kind == "connectivity" || kind == "k_connectivity") return "v";
    if (kind == "recursive_majority") return "t";
    return "n";
}

FunctionHandle build_function(const FamilySpec& spec) {
    Params p(spec);
    FunctionHandle f;
    const auto& kind = spec.kind;
    if (kind == "dictator") {
        const auto n = p.size("n");
        f = make_dictator(n, p.size_or("i", 0));
    } else if (kind == "junta") {
        const auto n = p.size("n");
        f = make_junta(n, p.size("m"), p.size_or("seed", 1));
    } else if (kind == "prefix_threshold") {
        const auto n = p.size("n");
        if (auto eps = p.real("eps")) {
            if (p.present("m") || p.present("k")) throw UsageError("prefix_threshold: give either eps or m,k");
            if (!(*eps > 0.0 && *eps <= 1.0)) throw UsageError("prefix_threshold: eps must be in (0, 1]");
            if (n < 3) throw UsageError("prefix_threshold: eps form needs n >= 3");
            const auto m = static_cast<std::size_t>(std::floor(*eps * static_cast<double>(n)));
            const auto k = static_cast<std::size_t>(std::floor(std::log(static_cast<double>(n))));
            f = make_prefix_threshold(n, m, k);
        } else {
            f = make_prefix_threshold(n, p.size("m"), p.size("k"));
        }
    } else if (kind == "tribes") {
        const auto n = p.size("n");
        f = make_tribes(n, p.size("s"));
    } else if (kind == "recursive_majority") {
        const auto k = p.size("k");
        f = make_recursive_majority(k, p.size("t"));
    } else if (kind == "and") {
        f = make_and(p.size("n"));
    } else if (kind == "or") {
        f = make_or(p.size("n"));
    } else if (kind == "majority") {
        f = make_majority(p.size("n"));
    } else if (kind == "connectivity") {
        f = make_connectivity(p.size("v"));
    } else if (kind == "k_connectivity") {
        const auto v = p.size("v");
        f = make_k_connectivity(v, p.size("k"));
    } else if (kind == "random_monotone_dnf") {
        const auto n = p.size("n");
        const auto c = p.size("c");
        const auto w = p.size("w");
        f = make_random_monotone_dnf(n, c, w, p.size_or("seed", 1));
    } else {
        throw UsageError("unknown family kind '" + kind + "' (see the `families` command)");
    }
    p.finish();
    return f;
}

FunctionHandle build_function(std::string_view text) { return build_function(FamilySpec::parse(text)); }

} // namespace choicewalk
