# Generated by qumodel. Package Classical
