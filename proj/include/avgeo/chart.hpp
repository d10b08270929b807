#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace avgeo {

/// An ordered list of coordinate names. Charts compare by value; copies are
/// cheap (shared immutable storage).
class Chart {
  public:
    Chart() : names_(std::make_shared<const std::vector<std::string>>()) {}
    explicit Chart(std::vector<std::string> names)
        : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {
        for (size_t i = 0; i < names_->size(); ++i)
            for (size_t j = i + 1; j < names_->size(); ++j)
                if ((*names_)[i] == (*names_)[j])
                    throw std::invalid_argument("Chart: duplicate coordinate " + (*names_)[i]);
    }

    int dim() const { return (int)names_->size(); }
    const std::string& name(int i) const { return names_->at(i); }
    const std::vector<std::string>& names() const { return *names_; }

    int index(const std::string& coord) const {
        for (size_t i = 0; i < names_->size(); ++i)
            if ((*names_)[i] == coord) return (int)i;
        throw std::invalid_argument("Chart: unknown coordinate " + coord);
    }

    bool has(const std::string& coord) const {
        for (const auto& n : *names_)
            if (n == coord) return true;
        return false;
    }

    bool operator==(const Chart& o) const {
        return names_ == o.names_ || *names_ == *o.names_;
    }
    bool operator!=(const Chart& o) const { return !(*this == o); }

    /// New chart with extra coordinates appended.
    Chart extended(const std::vector<std::string>& extra) const {
        std::vector<std::string> all = *names_;
        all.insert(all.end(), extra.begin(), extra.end());
        return Chart(std::move(all));
    }

  private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

inline void require_same_chart(const Chart& a, const Chart& b, const char* where) {
    if (a != b) throw std::invalid_argument(std::string(where) + ": chart mismatch");
}

} // namespace avgeo
