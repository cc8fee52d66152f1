#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace hsmc
{

// Fixed-universe dynamic bitset. Used for state sets (descriptor interiors)
// and proposition sets (labels). Equality and hashing are by content; two
// sets over different universe sizes never compare equal.
class bitset
{
    std::size_t _size = 0;
    std::vector< std::uint64_t > _words;

    static constexpr std::size_t word_bits = 64;

public:
    bitset() = default;
    explicit bitset( std::size_t size ) : _size{ size }, _words( ( size + word_bits - 1 ) / word_bits, 0 ) {}

    static bitset full( std::size_t size )
    {
        bitset b( size );
        for ( std::size_t i = 0; i < size; ++i )
            b.insert( i );
        return b;
    }

    [[nodiscard]] std::size_t universe() const { return _size; }

    [[nodiscard]] bool contains( std::size_t i ) const
    {
        assert( i < _size );
        return ( _words[ i / word_bits ] >> ( i % word_bits ) ) & 1u;
    }

    void insert( std::size_t i )
    {
        assert( i < _size );
        _words[ i / word_bits ] |= std::uint64_t{ 1 } << ( i % word_bits );
    }

    void erase( std::size_t i )
    {
        assert( i < _size );
        _words[ i / word_bits ] &= ~( std::uint64_t{ 1 } << ( i % word_bits ) );
    }

    [[nodiscard]] bool empty() const
    {
        for ( auto w : _words )
            if ( w != 0 )
                return false;
        return true;
    }

    [[nodiscard]] std::size_t count() const
    {
        std::size_t n = 0;
        for ( auto w : _words )
            n += static_cast< std::size_t >( std::popcount( w ) );
        return n;
    }

    [[nodiscard]] std::vector< std::size_t > members() const
    {
        std::vector< std::size_t > out;
        for ( std::size_t i = 0; i < _size; ++i )
            if ( contains( i ) )
                out.push_back( i );
        return out;
    }

    bitset& operator|=( const bitset& o )
    {
        assert( _size == o._size );
        for ( std::size_t i = 0; i < _words.size(); ++i )
            _words[ i ] |= o._words[ i ];
        return *this;
    }

    bitset& operator&=( const bitset& o )
    {
        assert( _size == o._size );
        for ( std::size_t i = 0; i < _words.size(); ++i )
            _words[ i ] &= o._words[ i ];
        return *this;
    }

    friend bitset operator|( bitset a, const bitset& b ) { return a |= b; }
    friend bitset operator&( bitset a, const bitset& b ) { return a &= b; }

    [[nodiscard]] bool is_subset_of( const bitset& o ) const
    {
        assert( _size == o._size );
        for ( std::size_t i = 0; i < _words.size(); ++i )
            if ( ( _words[ i ] & ~o._words[ i ] ) != 0 )
                return false;
        return true;
    }

    friend bool operator==( const bitset&, const bitset& ) = default;

    // Canonical order: smaller sets first, then lexicographic on sorted members.
    friend bool canonical_less( const bitset& a, const bitset& b )
    {
        auto ca = a.count(), cb = b.count();
        if ( ca != cb )
            return ca < cb;
        for ( std::size_t i = 0; i < a._size && i < b._size; ++i )
        {
            bool x = a.contains( i ), y = b.contains( i );
            if ( x != y )
                return x; // a has the smaller next member
        }
        return a._size < b._size;
    }

    [[nodiscard]] std::size_t hash() const
    {
        std::size_t h = std::hash< std::size_t >{}( _size );
        for ( auto w : _words )
            h ^= std::hash< std::uint64_t >{}( w ) + 0x9e3779b97f4a7c15ULL + ( h << 6 ) + ( h >> 2 );
        return h;
    }
};

} // namespace hsmc

template<>
struct std::hash< hsmc::bitset >
{
    std::size_t operator()( const hsmc::bitset& b ) const noexcept { return b.hash(); }
};
