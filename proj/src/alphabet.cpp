#include "hwm/alphabet.hpp"

#include "hwm/error.hpp"

namespace hwm {

RankedAlphabet::RankedAlphabet(std::vector<std::pair<std::string, int>> symbols)
    : symbols_(std::move(symbols)) {
    for (const auto& [name, arity] : symbols_) {
        if (arity < 1)
            throw Error(ErrorCode::ArityMismatch,
                        "symbol '" + name + "' has arity " + std::to_string(arity) +
                            "; positive ranked alphabets require arity >= 1");
        if (!arity_.emplace(name, arity).second)
            throw Error(ErrorCode::DuplicateSymbol,
                        "symbol '" + name + "' declared twice");
    }
}

int RankedAlphabet::arity(const std::string& symbol) const {
    auto it = arity_.find(symbol);
    if (it == arity_.end())
        throw Error(ErrorCode::UnknownSymbol, "symbol '" + symbol + "' not in alphabet");
    return it->second;
}

bool RankedAlphabet::subset_of(const RankedAlphabet& other) const {
    for (const auto& [name, arity] : symbols_) {
        if (!other.contains(name) || other.arity(name) != arity) return false;
    }
    return true;
}

} // namespace hwm
