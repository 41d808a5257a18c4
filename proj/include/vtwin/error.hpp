#pragma once

#include <stdexcept>
#include <string>

namespace vtwin
{

enum class ErrorCode
{
    InvalidArgument = 1,
    OutOfRange,
    Parse,
    Singularity,
    UndefinedRatio,
    Io,
};

// Every failure raised by the core carries one of the codes above so the C
// layer can translate it without string matching.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what)
{
    throw Error(code, what);
}

inline void require(bool cond, const std::string &what)
{
    if (!cond)
    {
        fail(ErrorCode::InvalidArgument, what);
    }
}

} // namespace vtwin
