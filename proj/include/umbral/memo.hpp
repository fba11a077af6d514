#ifndef UMBRAL_MEMO_HPP
#define UMBRAL_MEMO_HPP

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>

namespace umbral::detail {

// Process-wide cache. Concurrent readers; concurrent writers of the same key
// store equal values, so the first insert wins and later ones are dropped.
template <class Key, class Value, class Less = std::less<Key>>
class ConcurrentMemo {
public:
    std::optional<Value> find(const Key& key) const {
        std::shared_lock lock(mutex_);
        auto it = table_.find(key);
        if (it == table_.end())
            return std::nullopt;
        return it->second;
    }

    const Value& store(const Key& key, Value value) {
        std::unique_lock lock(mutex_);
        return table_.try_emplace(key, std::move(value)).first->second;
    }

    template <class Compute>
    Value get_or_compute(const Key& key, Compute&& compute) {
        if (auto hit = find(key))
            return *std::move(hit);
        Value value = compute();
        store(key, value);
        return value;
    }

    void clear() {
        std::unique_lock lock(mutex_);
        table_.clear();
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return table_.size();
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<Key, Value, Less> table_;
};

} // namespace umbral::detail

#endif
