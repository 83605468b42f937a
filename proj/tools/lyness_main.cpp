#include "lyness/cli.hpp"

int main(int argc, char** argv)
{
    return lyness::cli::main(argc, argv);
}
