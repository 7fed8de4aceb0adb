# Generated by qumodel. Package Application
