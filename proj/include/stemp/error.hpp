#ifndef STEMP_ERROR_HPP
#define STEMP_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stemp {

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Malformed input file or document. The CLI maps every ParseError to exit 2.
class ParseError : public Error {
   public:
    using Error::Error;
};

class IoError : public ParseError {
   public:
    using ParseError::ParseError;
};

class InvalidCharacter : public ParseError {
   public:
    InvalidCharacter(std::size_t position, char ch, std::string context = {});
    std::size_t position() const { return position_; }
    char character() const { return ch_; }

   private:
    std::size_t position_;
    char ch_;
};

class AsymmetricPair : public ParseError {
   public:
    AsymmetricPair(int i, int j);
    int i() const { return i_; }
    int j() const { return j_; }

   private:
    int i_;
    int j_;
};

class IndexOutOfRange : public ParseError {
   public:
    using ParseError::ParseError;
};

class TooManyLayers : public Error {
   public:
    using Error::Error;
};

class NotAcceptorCandidate : public Error {
   public:
    using Error::Error;
};

// Clique enumeration stopped because a caller-set budget was exhausted.
class BudgetExceeded : public Error {
   public:
    using Error::Error;
};

}  // namespace stemp

#endif  // STEMP_ERROR_HPP
